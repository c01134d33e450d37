#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ruelle/shift.hpp"

namespace ruelle {

/// Admissible words of one depth, in enumerate_words order. Shared by every
/// table and matrix built on the same depth.
class CylinderBasis {
 public:
  CylinderBasis(TransitionStructure shift, int depth, std::size_t cap = kDefaultWordCap);

  const TransitionStructure& shift() const { return shift_; }
  int depth() const { return depth_; }
  std::size_t size() const { return words_.size(); }
  const WordList& words() const { return words_; }

  /// Index of the cylinder containing any sequence that starts with prefix
  /// (only the first depth() symbols are read), or -1.
  std::ptrdiff_t index_of(std::span<const Symbol> prefix) const;
  std::ptrdiff_t index_of(const Point& p) const;

 private:
  TransitionStructure shift_;
  int depth_;
  WordList words_;
};

using BasisPtr = std::shared_ptr<const CylinderBasis>;

BasisPtr make_basis(const TransitionStructure& shift, int depth, std::size_t cap = kDefaultWordCap);

/// Locally constant function of depth m: one value per admissible word of
/// length m.
class TabulatedFunction {
 public:
  TabulatedFunction(BasisPtr basis, Eigen::VectorXcd values);

  static TabulatedFunction constant(const TransitionStructure& shift, Scalar c);
  static TabulatedFunction indicator(const TransitionStructure& shift, std::span<const Symbol> word);

  int depth() const { return basis_->depth(); }
  const CylinderBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const TransitionStructure& shift() const { return basis_->shift(); }
  const Eigen::VectorXcd& values() const { return values_; }

  Scalar operator()(const Point& p) const;
  Scalar at(std::span<const Symbol> prefix) const;

  /// Same function on a deeper basis.
  TabulatedFunction refined(int depth) const;

  double sup_norm() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }
  bool is_real(double tol = 0.0) const;
  TabulatedFunction real_part() const;

  /// var_k for k = 0 .. depth(); the last entry is always 0.
  std::vector<double> variations() const;
  double variation(int k) const;

  friend TabulatedFunction operator+(const TabulatedFunction& a, const TabulatedFunction& b);
  friend TabulatedFunction operator-(const TabulatedFunction& a, const TabulatedFunction& b);
  friend TabulatedFunction operator*(Scalar c, const TabulatedFunction& a);

 private:
  BasisPtr basis_;
  Eigen::VectorXcd values_;
};

/// Potential f on the shift: evaluable to a requested tolerance, with an
/// optional analytic upper bound m -> var_m(f).
class Potential {
 public:
  enum class Family { constant, table, geometric, linear_combination, custom };

  using Evaluator = std::function<Scalar(const Point&, double tol)>;
  using VarBound = std::function<double(int m)>;

  static Potential constant(Scalar c);
  static Potential table(TabulatedFunction t);
  /// f(w) = sum_{m >= 1} (c(w_m) r^m)^m with c = 1 on the first symbol and
  /// c = scale2 on every other symbol. Requires 0 < r < 1, 0 < scale2 < 1.
  static Potential geometric(double r, double scale2 = 0.5);
  static Potential linear_combination(std::vector<std::pair<Scalar, Potential>> terms);
  static Potential custom(Evaluator evaluate, std::optional<VarBound> var_bound = std::nullopt);

  Family family() const;

  /// Value at p within tol. Throws InadmissibleJunction when p is not a
  /// point of the shift.
  Scalar evaluate(const TransitionStructure& shift, const Point& p, double tol) const;

  /// Upper bound on var_m(f) when one is known analytically (exact for
  /// tables and constants).
  std::optional<double> var_bound(int m) const;

  /// Depth m with f in L_m, when f is locally constant by construction.
  std::optional<int> locality_depth() const;

  /// Set for the geometric family.
  std::optional<double> geometric_rate() const;

  /// Set for the table family.
  const TabulatedFunction* table_data() const;

  bool is_real() const;

  struct Impl;

 private:
  explicit Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Scalar evaluate_unchecked(const Point& p, double tol) const;
  std::shared_ptr<const Impl> impl_;
};

/// f evaluated at completion(u) for every admissible u of length depth; no
/// averaging. Every value is an actual value of f.
TabulatedFunction sample_table(const Potential& f, const TransitionStructure& shift, int depth,
                               double tol = 1e-14, std::size_t cap = kDefaultWordCap);

/// Certified upper bound on max Re f: the largest sampled value at depth
/// plus var_depth(f) (no slack when f is locally constant of that depth).
double max_real_upper(const Potential& f, const TransitionStructure& shift, int depth,
                      double tol = 1e-14);

/// Birkhoff sum S_q f(w*) for the periodic point w* with |w| = q.
Scalar birkhoff_sum(const Potential& f, const TransitionStructure& shift,
                    std::span<const Symbol> cycle, double tol);
Scalar birkhoff_sum(const TabulatedFunction& f, std::span<const Symbol> cycle);
Scalar birkhoff_sum(const TabulatedFunction& f, const Point& p, int q);

/// Lower estimate of var_m(g) for an arbitrary point function: the largest
/// |g(x) - g(y)| over completions x, y of admissible words of length
/// m + lookahead that share their first m symbols.
double variation_estimate(const TransitionStructure& shift, int m, int lookahead,
                          const std::function<Scalar(const Point&)>& g,
                          std::size_t cap = kDefaultWordCap);

struct VarEstimate {
  double value;
  int lookahead;
};

/// The lookahead grows while the number of length m + lookahead words stays
/// within sample_budget (and at most to max_lookahead).
VarEstimate var_estimate(const Potential& f, const TransitionStructure& shift, int m,
                         std::size_t sample_budget, double tol = 1e-14, int max_lookahead = 16);

struct VarBoundResult {
  double value;
  bool heuristic;  // no analytic bound: the value is an estimate
};

VarBoundResult var_upper_bound(const Potential& f, const TransitionStructure& shift, int m,
                               std::size_t sample_budget = 1u << 16);

/// Non-increasing sequence theta_1 >= theta_2 >= ... >= 0.
class ThetaProfile {
 public:
  /// theta_m = D r^m.
  static ThetaProfile geometric(double D, double r);
  /// theta_1 .. theta_K; queries past K return 0 when the last value is 0
  /// and throw std::out_of_range otherwise.
  static ThetaProfile tabulated(std::vector<double> theta);

  double operator()(int m) const;
  /// theta_m^m with the convention theta^0 = 1.
  double power(int m) const;
  /// C = sup_m theta_m = theta_1.
  double sup() const { return (*this)(1); }
  std::optional<std::pair<double, double>> geometric_params() const;
  std::optional<int> horizon() const;
  bool eventually_zero() const;

 private:
  std::optional<std::pair<double, double>> geometric_;
  std::vector<double> values_;
};

/// theta_m(f) = sup_{k >= m} var_k(f)^{1/k} for m = 1 .. m_max.
ThetaProfile theta_of(const Potential& f, const TransitionStructure& shift, int m_max,
                      std::size_t sample_budget = 1u << 16);

/// Smallest D >= 1 with D^{-1} <= theta_m / r^m <= D on the tabulated range.
double geometric_comparability(const ThetaProfile& theta, double r);

/// Smallest D with theta_m <= D r^m on the tabulated range (at least 1).
double geometric_envelope(const ThetaProfile& theta, double r);

/// Conditional expectation onto depth-m cylinders, integrated exactly on
/// depth-M refinements with f sampled at completions. The quadrature error
/// is at most var_M(f).
TabulatedFunction project_Em(const Potential& f, int m, const MarkovMeasure& mu, int M,
                             const TransitionStructure& shift, double tol = 1e-14,
                             std::size_t cap = kDefaultWordCap);
/// Exact E_m of a table.
TabulatedFunction project_Em(const TabulatedFunction& phi, int m, const MarkovMeasure& mu);

struct LipschitzSeminorm {
  double seminorm;                 // [phi]_theta = V_0^theta(phi)
  std::vector<double> tail_sup;    // V_m^theta(phi) for m = 0 .. depth
  double tail(int m) const {
    return m < static_cast<int>(tail_sup.size()) ? tail_sup[static_cast<std::size_t>(m)] : 0.0;
  }
};

LipschitzSeminorm lipschitz_seminorm(const TabulatedFunction& phi, double theta);

/// ||phi||_theta = ||phi||_inf + [phi]_theta.
double lipschitz_norm(const TabulatedFunction& phi, double theta);

/// ||phi||_inf + max_k var_k(phi) / theta_{k+1}^k. Throws NotInSpace when a
/// non-zero variation meets theta_{k+1} = 0.
double banach_norm(const TabulatedFunction& phi, const ThetaProfile& theta);

struct ConstantSet {
  int n;
  double C;   // sup theta_m
  double b1;  // >= e^{max Re f}
  double b2;  // var_k(f) <= b2 theta_k^k
  double C1;
  double C2;
  double C3;
  std::optional<double> C4;  // only for theta_m = D r^m
  std::optional<double> D;
  std::optional<double> r;
};

struct ConstantOptions {
  int sample_depth = 8;        // depth M of the table bounding max Re f
  int horizon = 64;            // largest k in the sup defining b2
  double tol = 1e-14;
};

ConstantSet constants_for(const Potential& f, const ThetaProfile& theta,
                          const TransitionStructure& shift, const ConstantOptions& options = {});

/// C1, C2, C3, C4 from N, b1, b2 and theta.
ConstantSet assemble_constants(int n, double b1, double b2, const ThetaProfile& theta);

}  // namespace ruelle
