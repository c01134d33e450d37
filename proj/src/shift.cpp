#include "ruelle/shift.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

Eigen::MatrixXi bool_product(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  Eigen::MatrixXi c = (a * b).unaryExpr([](int x) { return x > 0 ? 1 : 0; });
  return c;
}

Word shortest_cycle(const Eigen::MatrixXi& a, Symbol j) {
  const int n = static_cast<int>(a.rows());
  if (a(j, j) != 0) return {j};
  // BFS from j with successors visited in increasing order: the first
  // discovered path to each vertex is the lexicographically smallest among
  // the shortest ones, and the queue at each layer is in lexicographic order.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Symbol> queue{j};
  seen[static_cast<std::size_t>(j)] = true;
  while (!queue.empty()) {
    const Symbol x = queue.front();
    queue.pop_front();
    if (x != j && a(x, j) != 0) {
      Word path;
      for (Symbol y = x; y != -1; y = parent[static_cast<std::size_t>(y)]) path.push_back(y);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Symbol y = 0; y < n; ++y) {
      if (a(x, y) != 0 && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        parent[static_cast<std::size_t>(y)] = x;
        queue.push_back(y);
      }
    }
  }
  throw NotAperiodic("no cycle through symbol " + std::to_string(j + 1));
}

// Number of length-m paths ending at each symbol.
std::vector<std::uint64_t> endpoint_counts(const TransitionStructure& shift, int m) {
  const int n = shift.size();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 1);
  for (int step = 1; step < m; ++step) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (shift.allowed(i, j))
          next[static_cast<std::size_t>(j)] =
              sat_add(next[static_cast<std::size_t>(j)], counts[static_cast<std::size_t>(i)]);
    counts = std::move(next);
  }
  return counts;
}

void require_cap(std::uint64_t count, std::size_t cap, const char* what) {
  if (count > cap)
    throw DepthTooLarge(std::string(what) + ": " +
                        (count == kSaturated ? std::string("overflow") : std::to_string(count)) +
                        " words exceed the cap of " + std::to_string(cap));
}

}  // namespace

int check_aperiodic(const Eigen::MatrixXi& a) {
  if (a.rows() != a.cols() || a.rows() < 2)
    throw std::invalid_argument("transition matrix must be square with N >= 2");
  if ((a.array() != 0 && a.array() != 1).any())
    throw std::invalid_argument("transition matrix entries must be 0 or 1");
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i) {
    if (a.row(i).sum() == 0)
      throw NotAperiodic("row " + std::to_string(i + 1) + " of A is zero", i + 1, 0);
    if (a.col(i).sum() == 0)
      throw NotAperiodic("column " + std::to_string(i + 1) + " of A is zero", 0, i + 1);
  }
  const int bound = (n - 1) * (n - 1) + 1;
  Eigen::MatrixXi power = a;
  for (int k = 1; k <= bound; ++k) {
    if ((power.array() > 0).all()) return k;
    power = bool_product(power, a);
  }
  throw NotAperiodic("no power A^k with k <= " + std::to_string(bound) + " is positive");
}

TransitionStructure::TransitionStructure(Eigen::MatrixXi adjacency)
    : adjacency_(std::move(adjacency)), exponent_(check_aperiodic(adjacency_)) {
  tails_.reserve(static_cast<std::size_t>(size()));
  for (Symbol j = 0; j < size(); ++j) tails_.push_back(shortest_cycle(adjacency_, j));
}

TransitionStructure TransitionStructure::full_shift(int n) {
  return TransitionStructure(Eigen::MatrixXi::Ones(n, n));
}

TransitionStructure TransitionStructure::golden_mean() {
  Eigen::MatrixXi a(2, 2);
  a << 1, 1, 1, 0;
  return TransitionStructure(a);
}

bool TransitionStructure::admissible(std::span<const Symbol> w) const {
  for (Symbol s : w)
    if (s < 0 || s >= size()) return false;
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!allowed(w[k - 1], w[k])) return false;
  return true;
}

std::ptrdiff_t WordList::find(std::span<const Symbol> w) const {
  if (static_cast<int>(w.size()) != length_) return -1;
  if (length_ == 0) return size() > 0 ? 0 : -1;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto candidate = (*this)[mid];
    if (std::lexicographical_compare(candidate.begin(), candidate.end(), w.begin(), w.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(w.begin(), w.end(), (*this)[lo].begin()))
    return static_cast<std::ptrdiff_t>(lo);
  return -1;
}

BranchingSymbol branching_symbol(const TransitionStructure& shift) {
  const int n = shift.size();
  for (Symbol i = 0; i < n; ++i) {
    std::vector<Symbol> sources;
    for (Symbol j = 0; j < n && sources.size() < 2; ++j)
      if (shift.allowed(j, i)) sources.push_back(j);
    if (sources.size() == 2) return {i, sources[0], sources[1]};
  }
  // Unreachable for aperiodic A: a matrix whose columns all carry a single
  // one is a permutation matrix.
  throw NotAperiodic("every column of A has a single one");
}

std::uint64_t count_words(const TransitionStructure& shift, int m) {
  if (m < 0) throw std::invalid_argument("word length must be non-negative");
  if (m == 0) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t c : endpoint_counts(shift, m)) total = sat_add(total, c);
  return total;
}

WordList enumerate_words(const TransitionStructure& shift, int m, std::size_t cap) {
  if (m < 0) throw std::invalid_argument("word length must be non-negative");
  if (m == 0) return WordList::empty_word();
  require_cap(count_words(shift, m), cap, "enumerate_words");
  const int n = shift.size();
  std::vector<Symbol> level(static_cast<std::size_t>(n));
  std::iota(level.begin(), level.end(), 0);
  // Extending a sorted list word by word, successors in increasing order,
  // keeps the result sorted.
  for (int len = 1; len < m; ++len) {
    std::vector<Symbol> next;
    const std::size_t count = level.size() / static_cast<std::size_t>(len);
    for (std::size_t w = 0; w < count; ++w) {
      const Symbol* word = level.data() + w * static_cast<std::size_t>(len);
      const Symbol last = word[len - 1];
      for (Symbol s = 0; s < n; ++s) {
        if (!shift.allowed(last, s)) continue;
        next.insert(next.end(), word, word + len);
        next.push_back(s);
      }
    }
    level = std::move(next);
  }
  return WordList(m, std::move(level));
}

std::uint64_t count_periodic_points(const TransitionStructure& shift, int q) {
  if (q < 1) throw std::invalid_argument("period must be positive");
  const int n = shift.size();
  std::uint64_t total = 0;
  for (Symbol start = 0; start < n; ++start) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
    counts[static_cast<std::size_t>(start)] = 1;
    for (int step = 0; step < q; ++step) {
      std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (shift.allowed(i, j))
            next[static_cast<std::size_t>(j)] =
                sat_add(next[static_cast<std::size_t>(j)], counts[static_cast<std::size_t>(i)]);
      counts = std::move(next);
    }
    total = sat_add(total, counts[static_cast<std::size_t>(start)]);
  }
  return total;
}

WordList periodic_points(const TransitionStructure& shift, int q, std::size_t cap) {
  if (q < 1) throw std::invalid_argument("period must be positive");
  require_cap(count_words(shift, q), cap, "periodic_points");
  const WordList words = enumerate_words(shift, q, cap);
  std::vector<Symbol> kept;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto w = words[i];
    if (shift.allowed(w.back(), w.front())) kept.insert(kept.end(), w.begin(), w.end());
  }
  return WordList(q, std::move(kept));
}

PeriodicPoint canonical_tail(const TransitionStructure& shift, Symbol j) {
  if (j < 0 || j >= shift.size()) throw std::invalid_argument("symbol out of range");
  return {shift.tail_cycle(j)};
}

Point Point::shifted(std::size_t k) const {
  if (k < prefix.size()) return {Word(prefix.begin() + static_cast<std::ptrdiff_t>(k), prefix.end()), cycle};
  const std::size_t r = (k - prefix.size()) % cycle.size();
  Word rotated(cycle.begin() + static_cast<std::ptrdiff_t>(r), cycle.end());
  rotated.insert(rotated.end(), cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(r));
  return {{}, std::move(rotated)};
}

Point periodic(std::span<const Symbol> cycle) {
  return {{}, Word(cycle.begin(), cycle.end())};
}

Point completion(const TransitionStructure& shift, std::span<const Symbol> u) {
  if (u.empty()) return {{}, shift.tail_cycle(0)};
  return {Word(u.begin(), u.end() - 1), shift.tail_cycle(u.back())};
}

bool admissible(const TransitionStructure& shift, const Point& p) {
  if (p.cycle.empty()) return false;
  if (!shift.admissible(p.prefix) || !shift.admissible(p.cycle)) return false;
  if (!shift.allowed(p.cycle.back(), p.cycle.front())) return false;
  return p.prefix.empty() || shift.allowed(p.prefix.back(), p.cycle.front());
}

double metric_distance(const Point& x, const Point& y, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
  // Two eventually periodic sequences that agree on this many symbols agree
  // everywhere.
  const std::size_t horizon = std::max(x.prefix.size(), y.prefix.size()) +
                              std::lcm(x.cycle.size(), y.cycle.size());
  for (std::size_t k = 0; k < horizon; ++k)
    if (x.at(k) != y.at(k)) return std::pow(theta, static_cast<double>(k));
  return 0.0;
}

PerronData perron(const TransitionStructure& shift, double rel_tol) {
  const Eigen::MatrixXd a = shift.adjacency().cast<double>();
  const auto power = [&](const Eigen::MatrixXd& m) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows()) / static_cast<double>(m.rows());
    double root = 0.0;
    for (int iter = 0; iter < 1'000'000; ++iter) {
      Eigen::VectorXd w = m * v;
      const Eigen::ArrayXd ratio = w.array() / v.array();
      const double lo = ratio.minCoeff();
      const double hi = ratio.maxCoeff();
      root = 0.5 * (lo + hi);
      v = w / w.sum();
      if (hi - lo <= rel_tol * root) return std::pair{root, v};
    }
    throw EigensolveFailure("power iteration for the Perron root did not converge");
  };
  auto [root, right] = power(a);
  auto [root_t, left] = power(a.transpose());
  (void)root_t;
  return {root, right, left};
}

double topological_entropy(const TransitionStructure& shift) {
  return std::log(perron(shift).root);
}

MarkovMeasure::MarkovMeasure(const TransitionStructure& shift, Eigen::VectorXd p, Eigen::MatrixXd P)
    : p_(std::move(p)), P_(std::move(P)) {
  const int n = shift.size();
  constexpr double tol = 1e-9;
  if (p_.size() != n || P_.rows() != n || P_.cols() != n)
    throw std::invalid_argument("measure dimensions do not match the shift");
  if ((p_.array() <= 0.0).any() || std::abs(p_.sum() - 1.0) > tol)
    throw std::invalid_argument("stationary vector must be positive and sum to 1");
  for (int i = 0; i < n; ++i) {
    if (std::abs(P_.row(i).sum() - 1.0) > tol)
      throw std::invalid_argument("stochastic matrix rows must sum to 1");
    for (int j = 0; j < n; ++j)
      if ((P_(i, j) > 0.0) != shift.allowed(i, j) || P_(i, j) < 0.0)
        throw std::invalid_argument("stochastic matrix support must equal the allowed transitions");
  }
  if (((p_.transpose() * P_).transpose() - p_).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("p is not stationary for P");
}

MarkovMeasure MarkovMeasure::parry(const TransitionStructure& shift) {
  const PerronData pd = perron(shift);
  const int n = shift.size();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (shift.allowed(i, j)) P(i, j) = pd.right(j) / (pd.root * pd.right(i));
  // Rows are stochastic up to the eigenvector residual; renormalize so the
  // invariants hold to rounding.
  for (int i = 0; i < n; ++i) P.row(i) /= P.row(i).sum();
  Eigen::VectorXd p = pd.left.cwiseProduct(pd.right);
  p /= p.sum();
  return MarkovMeasure(shift, std::move(p), std::move(P));
}

double MarkovMeasure::cylinder_mass(std::span<const Symbol> w) const {
  if (w.empty()) return 1.0;
  double mass = p_(w[0]);
  for (std::size_t k = 1; k < w.size(); ++k) mass *= P_(w[k - 1], w[k]);
  return mass;
}

std::string format_word(std::span<const Symbol> w, int n) {
  std::ostringstream out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (n > 9 && k > 0) out << '.';
    out << (w[k] + 1);
  }
  return out.str();
}

Word parse_word(const std::string& text, int n) {
  Word w;
  if (text.empty()) return w;
  if (n > 9) {
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, '.')) w.push_back(std::stoi(part) - 1);
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad word: " + text);
      w.push_back(c - '1');
    }
  }
  for (Symbol s : w)
    if (s < 0 || s >= n) throw std::invalid_argument("symbol out of range in word: " + text);
  return w;
}

}  // namespace ruelle
