#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ruelle {

using Scalar = std::complex<double>;

/// Symbols are 0-based inside the library; every serialized form is 1-based.
using Symbol = int;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kDefaultWordCap = 10'000'000;

/// Smallest k with A^k entrywise positive, searched up to Wielandt's bound
/// (N-1)^2 + 1. Throws NotAperiodic otherwise, std::invalid_argument when the
/// input is not a square zero-one matrix of size >= 2.
int check_aperiodic(const Eigen::MatrixXi& a);

/// One-sided topological Markov shift on N symbols. Immutable once built.
class TransitionStructure {
 public:
  explicit TransitionStructure(Eigen::MatrixXi adjacency);

  static TransitionStructure full_shift(int n);
  /// [[1,1],[1,0]]
  static TransitionStructure golden_mean();

  int size() const { return static_cast<int>(adjacency_.rows()); }
  bool allowed(Symbol from, Symbol to) const { return adjacency_(from, to) != 0; }
  const Eigen::MatrixXi& adjacency() const { return adjacency_; }
  int aperiodicity_exponent() const { return exponent_; }

  /// True when every consecutive transition of w is allowed. Words of
  /// length <= 1 are accepted as long as their symbols are in range.
  bool admissible(std::span<const Symbol> w) const;

  /// Shortest admissible cycle through j, see canonical_tail().
  const Word& tail_cycle(Symbol j) const { return tails_[static_cast<std::size_t>(j)]; }

 private:
  Eigen::MatrixXi adjacency_;
  int exponent_;
  std::vector<Word> tails_;
};

/// Flat, lexicographically ordered list of equal-length words.
class WordList {
 public:
  WordList(int length, std::vector<Symbol> symbols)
      : length_(length), symbols_(std::move(symbols)) {}

  int length() const { return length_; }
  std::size_t size() const {
    return length_ == 0 ? count_empty_ : symbols_.size() / static_cast<std::size_t>(length_);
  }
  std::span<const Symbol> operator[](std::size_t i) const {
    return {symbols_.data() + i * static_cast<std::size_t>(length_),
            static_cast<std::size_t>(length_)};
  }
  Word word(std::size_t i) const {
    auto s = (*this)[i];
    return {s.begin(), s.end()};
  }

  /// Position of w in the list, or -1. Requires |w| == length().
  std::ptrdiff_t find(std::span<const Symbol> w) const;

  static WordList empty_word() {
    WordList list(0, {});
    list.count_empty_ = 1;
    return list;
  }

 private:
  int length_;
  std::vector<Symbol> symbols_;
  std::size_t count_empty_ = 0;
};

struct BranchingSymbol {
  Symbol column;        // symbol i whose column of A has >= 2 ones
  Symbol first_source;  // j1 < j2 with A(j1 i) = A(j2 i) = 1
  Symbol second_source;
};

BranchingSymbol branching_symbol(const TransitionStructure& shift);

/// Number of admissible words of length m (saturates at UINT64_MAX).
std::uint64_t count_words(const TransitionStructure& shift, int m);

/// All admissible words of length m in lexicographic order.
/// Throws DepthTooLarge when there are more than cap of them.
WordList enumerate_words(const TransitionStructure& shift, int m,
                         std::size_t cap = kDefaultWordCap);

/// trace(A^q), saturating.
std::uint64_t count_periodic_points(const TransitionStructure& shift, int q);

/// A point of Per_q represented by the cycle word w, i.e. w* = www...
struct PeriodicPoint {
  Word cycle;
  int period() const { return static_cast<int>(cycle.size()); }
};

/// Every length-q word whose transitions, including the wrap-around, are
/// allowed. The list is in lexicographic order and has trace(A^q) entries.
WordList periodic_points(const TransitionStructure& shift, int q,
                         std::size_t cap = kDefaultWordCap);

/// Shortest admissible cycle starting at j; ties broken lexicographically.
PeriodicPoint canonical_tail(const TransitionStructure& shift, Symbol j);

/// Eventually periodic sequence prefix . cycle . cycle . ...
struct Point {
  Word prefix;
  Word cycle;

  Symbol at(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }
  /// sigma^k of this point, keeping the representation short.
  Point shifted(std::size_t k) const;
};

Point periodic(std::span<const Symbol> cycle);

/// The point u_0 ... u_{n-2} (canonical_tail(u_{n-1}))*, which lies in [u].
Point completion(const TransitionStructure& shift, std::span<const Symbol> u);

/// Checks that the point lies in the shift space, junction included.
bool admissible(const TransitionStructure& shift, const Point& p);

/// d_theta(x, y) = theta^(first index where x and y differ), 0 when equal.
double metric_distance(const Point& x, const Point& y, double theta);

/// Perron root and positive eigenvectors of A, from power iteration with a
/// Collatz-Wielandt bracket narrower than rel_tol * root.
struct PerronData {
  double root;
  Eigen::VectorXd right;  // A v = root v, sum 1
  Eigen::VectorXd left;   // u^T A = root u^T, sum 1
};

PerronData perron(const TransitionStructure& shift, double rel_tol = 1e-12);

double topological_entropy(const TransitionStructure& shift);

/// Markov measure given by an initial distribution p and a stochastic P
/// supported exactly on the allowed transitions.
class MarkovMeasure {
 public:
  MarkovMeasure(const TransitionStructure& shift, Eigen::VectorXd p, Eigen::MatrixXd P);

  /// Measure of maximal entropy.
  static MarkovMeasure parry(const TransitionStructure& shift);

  const Eigen::VectorXd& stationary() const { return p_; }
  const Eigen::MatrixXd& stochastic() const { return P_; }

  double cylinder_mass(std::span<const Symbol> w) const;

 private:
  Eigen::VectorXd p_;
  Eigen::MatrixXd P_;
};

/// 1-based digits, separated by '.' when N > 9.
std::string format_word(std::span<const Symbol> w, int n);
Word parse_word(const std::string& text, int n);

}  // namespace ruelle
