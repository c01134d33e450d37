#include "ruelle/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "ruelle/errors.hpp"

namespace ruelle {

// ---------------------------------------------------------------------------
// CylinderBasis

CylinderBasis::CylinderBasis(TransitionStructure shift, int depth, std::size_t cap)
    : shift_(std::move(shift)), depth_(depth), words_(enumerate_words(shift_, depth, cap)) {}

std::ptrdiff_t CylinderBasis::index_of(std::span<const Symbol> prefix) const {
  if (static_cast<int>(prefix.size()) < depth_) return -1;
  return words_.find(prefix.first(static_cast<std::size_t>(depth_)));
}

std::ptrdiff_t CylinderBasis::index_of(const Point& p) const {
  Word head(static_cast<std::size_t>(depth_));
  for (int k = 0; k < depth_; ++k) head[static_cast<std::size_t>(k)] = p.at(static_cast<std::size_t>(k));
  return words_.find(head);
}

BasisPtr make_basis(const TransitionStructure& shift, int depth, std::size_t cap) {
  return std::make_shared<const CylinderBasis>(shift, depth, cap);
}

// ---------------------------------------------------------------------------
// TabulatedFunction

namespace {

bool same_shift(const TransitionStructure& a, const TransitionStructure& b) {
  return a.adjacency() == b.adjacency();
}

// Largest pairwise distance in a set of complex numbers.
double diameter(std::vector<Scalar>& values) {
  if (values.size() < 2) return 0.0;
  std::sort(values.begin(), values.end(), [](Scalar a, Scalar b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  double best = 0.0;
  bool all_real = std::all_of(values.begin(), values.end(), [](Scalar v) { return v.imag() == 0.0; });
  if (all_real) return values.back().real() - values.front().real();
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b)
      best = std::max(best, std::abs(values[a] - values[b]));
  return best;
}

// max over groups of words sharing their first k symbols of the diameter of
// the associated values. Words are sorted, so each group is contiguous.
double grouped_diameter(const WordList& words, int k, const std::function<Scalar(std::size_t)>& value) {
  double best = 0.0;
  std::vector<Scalar> group;
  std::size_t start = 0;
  const std::size_t n = words.size();
  for (std::size_t i = 0; i <= n; ++i) {
    const bool boundary =
        i == n || (i > start && !std::equal(words[i].begin(), words[i].begin() + k, words[start].begin()));
    if (boundary) {
      group.clear();
      for (std::size_t j = start; j < i; ++j) group.push_back(value(j));
      best = std::max(best, diameter(group));
      start = i;
    }
  }
  return best;
}

}  // namespace

TabulatedFunction::TabulatedFunction(BasisPtr basis, Eigen::VectorXcd values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != basis_->size())
    throw std::invalid_argument("table size does not match the number of admissible words");
}

TabulatedFunction TabulatedFunction::constant(const TransitionStructure& shift, Scalar c) {
  Eigen::VectorXcd v(1);
  v(0) = c;
  return {make_basis(shift, 0), v};
}

TabulatedFunction TabulatedFunction::indicator(const TransitionStructure& shift,
                                               std::span<const Symbol> word) {
  auto basis = make_basis(shift, static_cast<int>(word.size()));
  const std::ptrdiff_t idx = basis->index_of(word);
  if (idx < 0) throw std::invalid_argument("indicator of an inadmissible word");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  v(idx) = 1.0;
  return {basis, v};
}

Scalar TabulatedFunction::operator()(const Point& p) const {
  const std::ptrdiff_t idx = basis_->index_of(p);
  if (idx < 0) throw InadmissibleJunction("point does not lie in an admissible cylinder");
  return values_(idx);
}

Scalar TabulatedFunction::at(std::span<const Symbol> prefix) const {
  const std::ptrdiff_t idx = basis_->index_of(prefix);
  if (idx < 0) throw InadmissibleJunction("prefix is not an admissible word of the table depth");
  return values_(idx);
}

TabulatedFunction TabulatedFunction::refined(int depth) const {
  if (depth < this->depth()) throw std::invalid_argument("refinement must not reduce depth");
  if (depth == this->depth()) return *this;
  auto basis = make_basis(shift(), depth);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i) v(static_cast<Eigen::Index>(i)) = at(basis->words()[i]);
  return {basis, v};
}

bool TabulatedFunction::is_real(double tol) const {
  return values_.size() == 0 || values_.imag().cwiseAbs().maxCoeff() <= tol;
}

TabulatedFunction TabulatedFunction::real_part() const {
  return {basis_, values_.real().cast<Scalar>()};
}

std::vector<double> TabulatedFunction::variations() const {
  const int m = depth();
  std::vector<double> var(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = 0; k < m; ++k)
    var[static_cast<std::size_t>(k)] = grouped_diameter(
        basis_->words(), k, [&](std::size_t i) { return values_(static_cast<Eigen::Index>(i)); });
  return var;
}

double TabulatedFunction::variation(int k) const {
  if (k < 0) throw std::invalid_argument("variation depth must be non-negative");
  if (k >= depth()) return 0.0;
  return grouped_diameter(basis_->words(), k,
                          [&](std::size_t i) { return values_(static_cast<Eigen::Index>(i)); });
}

namespace {

std::pair<TabulatedFunction, TabulatedFunction> common_depth(const TabulatedFunction& a,
                                                             const TabulatedFunction& b) {
  if (!same_shift(a.shift(), b.shift())) throw std::invalid_argument("tables live on different shifts");
  const int d = std::max(a.depth(), b.depth());
  return {a.refined(d), b.refined(d)};
}

}  // namespace

TabulatedFunction operator+(const TabulatedFunction& a, const TabulatedFunction& b) {
  auto [x, y] = common_depth(a, b);
  return {x.basis_ptr(), x.values() + y.values()};
}

TabulatedFunction operator-(const TabulatedFunction& a, const TabulatedFunction& b) {
  auto [x, y] = common_depth(a, b);
  return {x.basis_ptr(), x.values() - y.values()};
}

TabulatedFunction operator*(Scalar c, const TabulatedFunction& a) {
  return {a.basis_ptr(), c * a.values()};
}

// ---------------------------------------------------------------------------
// Potential

namespace {

struct ConstantData {
  Scalar value;
};
struct TableData {
  TabulatedFunction table;
};
struct GeometricData {
  double r;
  double scale2;
};
struct LinearData {
  std::vector<std::pair<Scalar, Potential>> terms;
};
struct CustomData {
  Potential::Evaluator evaluate;
  std::optional<Potential::VarBound> var_bound;
};

double geometric_value(const GeometricData& g, const Point& p, double tol) {
  double sum = 0.0;
  const double log_r = std::log(g.r);
  for (int k = 1; k < 100000; ++k) {
    const double c = p.at(static_cast<std::size_t>(k)) == 0 ? 1.0 : g.scale2;
    const double kk = static_cast<double>(k);
    sum += std::pow(c, kk) * std::exp(kk * kk * log_r);
    // Remaining terms are at most sum_{j > k} r^{j^2} <= r^{(k+1)^2} / (1 - r^{2k+3}).
    const double next = std::exp((kk + 1) * (kk + 1) * log_r);
    const double remainder = next / (1.0 - std::exp((2 * kk + 3) * log_r));
    if (remainder <= tol || next == 0.0) break;
  }
  return sum;
}

double geometric_variation(const GeometricData& g, int m) {
  const double log_r = std::log(g.r);
  double sum = 0.0;
  for (int k = std::max(m, 1);; ++k) {
    const double kk = static_cast<double>(k);
    const double term = std::exp(kk * kk * log_r) * (1.0 - std::pow(g.scale2, kk));
    sum += term;
    if (term == 0.0 || term <= sum * 1e-18) break;
  }
  return sum;
}

}  // namespace

struct Potential::Impl {
  std::variant<ConstantData, TableData, GeometricData, LinearData, CustomData> data;
};

Potential Potential::constant(Scalar c) {
  return Potential(std::make_shared<const Impl>(Impl{ConstantData{c}}));
}

Potential Potential::table(TabulatedFunction t) {
  return Potential(std::make_shared<const Impl>(Impl{TableData{std::move(t)}}));
}

Potential Potential::geometric(double r, double scale2) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("geometric family needs 0 < r < 1");
  if (!(scale2 > 0.0 && scale2 < 1.0)) throw std::invalid_argument("geometric family needs 0 < scale2 < 1");
  return Potential(std::make_shared<const Impl>(Impl{GeometricData{r, scale2}}));
}

Potential Potential::linear_combination(std::vector<std::pair<Scalar, Potential>> terms) {
  if (terms.empty()) throw std::invalid_argument("empty linear combination");
  return Potential(std::make_shared<const Impl>(Impl{LinearData{std::move(terms)}}));
}

Potential Potential::custom(Evaluator evaluate, std::optional<VarBound> var_bound) {
  return Potential(std::make_shared<const Impl>(Impl{CustomData{std::move(evaluate), std::move(var_bound)}}));
}

Potential::Family Potential::family() const {
  return static_cast<Family>(impl_->data.index());
}

Scalar Potential::evaluate(const TransitionStructure& shift, const Point& p, double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("evaluation tolerance must be positive");
  if (!admissible(shift, p)) throw InadmissibleJunction("point is not in the shift space");
  return evaluate_unchecked(p, tol);
}

Scalar Potential::evaluate_unchecked(const Point& p, double tol) const {
  return std::visit(
      [&](const auto& d) -> Scalar {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>) {
          return d.value;
        } else if constexpr (std::is_same_v<T, TableData>) {
          return d.table(p);
        } else if constexpr (std::is_same_v<T, GeometricData>) {
          return geometric_value(d, p, tol);
        } else if constexpr (std::is_same_v<T, LinearData>) {
          double weight = 0.0;
          for (const auto& [c, f] : d.terms) weight += std::abs(c);
          const double part_tol = weight > 0.0 ? tol / weight : tol;
          Scalar sum = 0.0;
          for (const auto& [c, f] : d.terms)
            if (c != 0.0) sum += c * f.evaluate_unchecked(p, part_tol);
          return sum;
        } else {
          return d.evaluate(p, tol);
        }
      },
      impl_->data);
}

std::optional<double> Potential::var_bound(int m) const {
  if (m < 0) throw std::invalid_argument("variation depth must be non-negative");
  return std::visit(
      [&](const auto& d) -> std::optional<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, TableData>) {
          return d.table.variation(m);
        } else if constexpr (std::is_same_v<T, GeometricData>) {
          return geometric_variation(d, m);
        } else if constexpr (std::is_same_v<T, LinearData>) {
          double sum = 0.0;
          for (const auto& [c, f] : d.terms) {
            if (c == 0.0) continue;
            auto part = f.var_bound(m);
            if (!part) return std::nullopt;
            sum += std::abs(c) * *part;
          }
          return sum;
        } else {
          if (!d.var_bound) return std::nullopt;
          return (*d.var_bound)(m);
        }
      },
      impl_->data);
}

std::optional<int> Potential::locality_depth() const {
  return std::visit(
      [&](const auto& d) -> std::optional<int> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>) {
          return 0;
        } else if constexpr (std::is_same_v<T, TableData>) {
          return d.table.depth();
        } else if constexpr (std::is_same_v<T, LinearData>) {
          int depth = 0;
          for (const auto& [c, f] : d.terms) {
            auto part = f.locality_depth();
            if (!part) return std::nullopt;
            depth = std::max(depth, *part);
          }
          return depth;
        } else {
          return std::nullopt;
        }
      },
      impl_->data);
}

std::optional<double> Potential::geometric_rate() const {
  if (const auto* g = std::get_if<GeometricData>(&impl_->data)) return g->r;
  return std::nullopt;
}

const TabulatedFunction* Potential::table_data() const {
  if (const auto* t = std::get_if<TableData>(&impl_->data)) return &t->table;
  return nullptr;
}

bool Potential::is_real() const {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>) {
          return d.value.imag() == 0.0;
        } else if constexpr (std::is_same_v<T, TableData>) {
          return d.table.is_real();
        } else if constexpr (std::is_same_v<T, GeometricData>) {
          return true;
        } else if constexpr (std::is_same_v<T, LinearData>) {
          return std::all_of(d.terms.begin(), d.terms.end(),
                             [](const auto& t) { return t.first.imag() == 0.0 && t.second.is_real(); });
        } else {
          return false;
        }
      },
      impl_->data);
}

// ---------------------------------------------------------------------------
// Sampling, Birkhoff sums, variations

TabulatedFunction sample_table(const Potential& f, const TransitionStructure& shift, int depth,
                               double tol, std::size_t cap) {
  auto basis = make_basis(shift, depth, cap);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i)
    v(static_cast<Eigen::Index>(i)) = f.evaluate(shift, completion(shift, basis->words()[i]), tol);
  return {basis, v};
}

double max_real_upper(const Potential& f, const TransitionStructure& shift, int depth, double tol) {
  const int M = std::max(depth, f.locality_depth().value_or(0));
  const TabulatedFunction sampled = sample_table(f, shift, M, tol);
  const double max_re = sampled.values().real().maxCoeff();
  if (f.locality_depth() && *f.locality_depth() <= M) return max_re;
  return max_re + var_upper_bound(f, shift, M).value + tol;
}

Scalar birkhoff_sum(const Potential& f, const TransitionStructure& shift,
                    std::span<const Symbol> cycle, double tol) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  const Point p = periodic(cycle);
  if (!admissible(shift, p)) throw InadmissibleJunction("cycle is not a periodic point of the shift");
  if (const TabulatedFunction* t = f.table_data()) return birkhoff_sum(*t, cycle);
  const double each = tol / static_cast<double>(cycle.size());
  Scalar sum = 0.0;
  for (std::size_t k = 0; k < cycle.size(); ++k) sum += f.evaluate(shift, p.shifted(k), each);
  return sum;
}

Scalar birkhoff_sum(const TabulatedFunction& f, std::span<const Symbol> cycle) {
  const std::size_t q = cycle.size();
  const int d = f.depth();
  Word window(static_cast<std::size_t>(d));
  Scalar sum = 0.0;
  for (std::size_t k = 0; k < q; ++k) {
    for (int j = 0; j < d; ++j) window[static_cast<std::size_t>(j)] = cycle[(k + static_cast<std::size_t>(j)) % q];
    sum += f.at(window);
  }
  return sum;
}

Scalar birkhoff_sum(const TabulatedFunction& f, const Point& p, int q) {
  Scalar sum = 0.0;
  for (int k = 0; k < q; ++k) sum += f(p.shifted(static_cast<std::size_t>(k)));
  return sum;
}

double variation_estimate(const TransitionStructure& shift, int m, int lookahead,
                          const std::function<Scalar(const Point&)>& g, std::size_t cap) {
  if (m < 0 || lookahead < 0) throw std::invalid_argument("negative depth");
  const WordList words = enumerate_words(shift, m + lookahead, cap);
  std::vector<Scalar> values(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) values[i] = g(completion(shift, words[i]));
  return grouped_diameter(words, m, [&](std::size_t i) { return values[i]; });
}

VarEstimate var_estimate(const Potential& f, const TransitionStructure& shift, int m,
                         std::size_t sample_budget, double tol, int max_lookahead) {
  int lookahead = 1;
  while (lookahead < max_lookahead && count_words(shift, m + lookahead + 1) <= sample_budget) ++lookahead;
  const double value = variation_estimate(
      shift, m, lookahead, [&](const Point& p) { return f.evaluate(shift, p, tol); });
  return {value, lookahead};
}

VarBoundResult var_upper_bound(const Potential& f, const TransitionStructure& shift, int m,
                               std::size_t sample_budget) {
  if (auto b = f.var_bound(m)) return {*b, false};
  return {var_estimate(f, shift, m, sample_budget).value, true};
}

// ---------------------------------------------------------------------------
// ThetaProfile

ThetaProfile ThetaProfile::geometric(double D, double r) {
  if (!(D > 0.0) || !(r > 0.0 && r < 1.0)) throw std::invalid_argument("geometric profile needs D > 0, 0 < r < 1");
  ThetaProfile t;
  t.geometric_ = std::pair{D, r};
  return t;
}

ThetaProfile ThetaProfile::tabulated(std::vector<double> theta) {
  if (theta.empty()) throw std::invalid_argument("empty theta profile");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] < 0.0) throw std::invalid_argument("theta must be non-negative");
    if (i > 0 && theta[i] > theta[i - 1]) throw std::invalid_argument("theta must be non-increasing");
  }
  ThetaProfile t;
  t.values_ = std::move(theta);
  return t;
}

double ThetaProfile::operator()(int m) const {
  if (m < 1) throw std::invalid_argument("theta is indexed from m = 1");
  if (geometric_) return geometric_->first * std::pow(geometric_->second, m);
  if (static_cast<std::size_t>(m) <= values_.size()) return values_[static_cast<std::size_t>(m) - 1];
  if (values_.back() == 0.0) return 0.0;
  throw std::out_of_range("theta_" + std::to_string(m) + " is beyond the tabulated horizon");
}

double ThetaProfile::power(int m) const {
  if (m == 0) return 1.0;
  return std::pow((*this)(m), m);
}

std::optional<std::pair<double, double>> ThetaProfile::geometric_params() const { return geometric_; }

std::optional<int> ThetaProfile::horizon() const {
  if (geometric_ || values_.back() == 0.0) return std::nullopt;
  return static_cast<int>(values_.size());
}

bool ThetaProfile::eventually_zero() const { return !geometric_ && values_.back() == 0.0; }

ThetaProfile theta_of(const Potential& f, const TransitionStructure& shift, int m_max,
                      std::size_t sample_budget) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  std::vector<double> roots;
  int horizon = 0;
  if (f.var_bound(1)) {
    // The analytic bounds in this library are eventually decreasing in
    // var^{1/k}; 64 steps past m_max covers the supremum.
    horizon = m_max + 64;
    for (int k = 1; k <= horizon; ++k) {
      const double v = *f.var_bound(k);
      roots.push_back(v > 0.0 ? std::exp(std::log(v) / k) : 0.0);
    }
  } else {
    while (count_words(shift, horizon + 2) <= sample_budget) ++horizon;
    if (m_max > horizon)
      throw NoAnalyticBound("no analytic variation bound and m_max exceeds the sampling horizon " +
                            std::to_string(horizon));
    for (int k = 1; k <= horizon; ++k) {
      const double v = var_estimate(f, shift, k, sample_budget).value;
      roots.push_back(v > 0.0 ? std::exp(std::log(v) / k) : 0.0);
    }
  }
  std::vector<double> theta(static_cast<std::size_t>(m_max));
  double running = 0.0;
  for (int k = horizon; k >= 1; --k) {
    running = std::max(running, roots[static_cast<std::size_t>(k) - 1]);
    if (k <= m_max) theta[static_cast<std::size_t>(k) - 1] = running;
  }
  return ThetaProfile::tabulated(std::move(theta));
}

namespace {

int comparison_range(const ThetaProfile& theta) {
  if (auto h = theta.horizon()) return *h;
  return 64;
}

}  // namespace

double geometric_comparability(const ThetaProfile& theta, double r) {
  double D = 1.0;
  for (int m = 1; m <= comparison_range(theta); ++m) {
    const double t = theta(m);
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    const double ratio = std::exp(std::log(t) - m * std::log(r));
    D = std::max({D, ratio, 1.0 / ratio});
  }
  return D;
}

double geometric_envelope(const ThetaProfile& theta, double r) {
  double D = 1.0;
  for (int m = 1; m <= comparison_range(theta); ++m) {
    const double t = theta(m);
    if (t > 0.0) D = std::max(D, std::exp(std::log(t) - m * std::log(r)));
  }
  return D;
}

// ---------------------------------------------------------------------------
// E_m

namespace {

TabulatedFunction average_onto(const WordList& fine, const std::vector<Scalar>& values, int m,
                               const MarkovMeasure& mu, const TransitionStructure& shift) {
  auto basis = make_basis(shift, m);
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const std::ptrdiff_t parent = basis->index_of(fine[i]);
    const double w = mu.cylinder_mass(fine[i]);
    sum(parent) += w * values[i];
    mass(parent) += w;
  }
  return {basis, sum.cwiseQuotient(mass.cast<Scalar>())};
}

}  // namespace

TabulatedFunction project_Em(const Potential& f, int m, const MarkovMeasure& mu, int M,
                             const TransitionStructure& shift, double tol, std::size_t cap) {
  if (m < 0 || M < m) throw std::invalid_argument("project_Em needs 0 <= m <= M");
  if (const TabulatedFunction* t = f.table_data(); t && t->depth() <= M) return project_Em(*t, m, mu);
  const WordList fine = enumerate_words(shift, M, cap);
  std::vector<Scalar> values(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) values[i] = f.evaluate(shift, completion(shift, fine[i]), tol);
  return average_onto(fine, values, m, mu, shift);
}

TabulatedFunction project_Em(const TabulatedFunction& phi, int m, const MarkovMeasure& mu) {
  if (m < 0) throw std::invalid_argument("project_Em needs m >= 0");
  if (phi.depth() <= m) return phi.refined(m);
  const WordList& fine = phi.basis().words();
  std::vector<Scalar> values(phi.values().data(), phi.values().data() + phi.values().size());
  return average_onto(fine, values, m, mu, phi.shift());
}

// ---------------------------------------------------------------------------
// Norms

LipschitzSeminorm lipschitz_seminorm(const TabulatedFunction& phi, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
  const std::vector<double> var = phi.variations();
  std::vector<double> tail(var.size(), 0.0);
  double running = 0.0;
  for (std::size_t k = var.size(); k-- > 0;) {
    running = std::max(running, var[k] / std::pow(theta, static_cast<double>(k)));
    tail[k] = running;
  }
  return {tail.front(), tail};
}

double lipschitz_norm(const TabulatedFunction& phi, double theta) {
  return phi.sup_norm() + lipschitz_seminorm(phi, theta).seminorm;
}

double banach_norm(const TabulatedFunction& phi, const ThetaProfile& theta) {
  const std::vector<double> var = phi.variations();
  double best = 0.0;
  for (int k = 0; k + 1 < static_cast<int>(var.size()); ++k) {
    const double v = var[static_cast<std::size_t>(k)];
    if (v == 0.0) continue;
    if (k == 0) {
      best = std::max(best, v);
      continue;
    }
    const double t = theta(k + 1);
    if (t == 0.0)
      throw NotInSpace("var_" + std::to_string(k) + " > 0 while theta_" + std::to_string(k + 1) + " = 0");
    best = std::max(best, std::exp(std::log(v) - k * std::log(t)));
  }
  return phi.sup_norm() + best;
}

// ---------------------------------------------------------------------------
// Constants

ConstantSet assemble_constants(int n, double b1, double b2, const ThetaProfile& theta) {
  ConstantSet c{};
  const double N = n;
  c.n = n;
  c.C = theta.sup();
  c.b1 = b1;
  c.b2 = b2;
  c.C1 = std::max(2 * N * b1, N * b1 * (3 * c.C * b2 + c.C));
  c.C2 = std::max(N * b1 + c.C1, 3 * N * b1 * (c.C * b2 + 1));
  c.C3 = 3 * N * b1 * b2 * (c.C + 3);
  if (auto g = theta.geometric_params()) {
    const auto [D, r] = *g;
    c.D = D;
    c.r = r;
    c.C4 = D * D * N * b1 * r * r + D * N * b1 * (3 * D * D * r * r * r * b2 + std::max(1.0, 2 * D * r * r));
  }
  return c;
}

ConstantSet constants_for(const Potential& f, const ThetaProfile& theta,
                          const TransitionStructure& shift, const ConstantOptions& options) {
  const double b1 = std::exp(max_real_upper(f, shift, options.sample_depth, options.tol));

  int horizon = options.horizon;
  if (auto h = theta.horizon()) horizon = std::min(horizon, *h);
  double b2 = 0.0;
  for (int k = 0; k <= horizon; ++k) {
    const double v = var_upper_bound(f, shift, k).value;
    if (v == 0.0) continue;
    if (k == 0) {
      b2 = std::max(b2, v);
      continue;
    }
    const double t = theta(k);
    if (t == 0.0)
      throw ProfileViolation("var_" + std::to_string(k) + "(f) > 0 but theta_" + std::to_string(k) + " = 0");
    b2 = std::max(b2, std::exp(std::log(v) - k * std::log(t)));
  }
  if (b2 == 0.0) b2 = 1.0;
  return assemble_constants(shift.size(), b1, b2, theta);
}

}  // namespace ruelle
