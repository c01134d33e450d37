#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ruelle/potential.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

struct OrbitSum {
  Scalar value;          // Z_q = sum over Per_q of e^{S_q f}
  double error;          // bound on |value - Z_q| from the evaluation tolerance
  std::uint64_t points;  // #Per_q
};

OrbitSum orbit_sum(const Potential& f, const TransitionStructure& shift, int q, double tol = 1e-12,
                   std::size_t cap = kDefaultWordCap);

/// Z_1 .. Z_Q.
std::vector<Scalar> orbit_sums(const Potential& f, const TransitionStructure& shift, int Q, double tol = 1e-12);

/// Coefficients c_0 .. c_Q of exp(-sum_q Z_q z^q / q) from Z_1 .. Z_Q by
/// Newton's recursion c_k = -(1/k) sum_{j=1..k} Z_j c_{k-j}.
template <class T>
std::vector<T> newton_coefficients(std::span<const T> power_sums) {
  const std::size_t Q = power_sums.size();
  std::vector<T> c(Q + 1, T(0));
  c[0] = T(1);
  for (std::size_t k = 1; k <= Q; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += power_sums[j - 1] * c[k - j];
    c[k] = -acc / static_cast<double>(k);
  }
  return c;
}

/// Coefficients of det(I - zA) = sum_k a_k z^k by Faddeev-LeVerrier, padded
/// with zeros to degree Q.
template <class Derived>
std::vector<typename Derived::Scalar> faddeev_leverrier(const Eigen::MatrixBase<Derived>& a, int Q) {
  using T = typename Derived::Scalar;
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  std::vector<T> c(static_cast<std::size_t>(Q) + 1, T(0));
  c[0] = T(1);
  Mat mk = Mat::Identity(n, n);
  for (Eigen::Index k = 1; k <= std::min<Eigen::Index>(n, Q); ++k) {
    const Mat amk = a * mk;
    const T ck = -amk.trace() / static_cast<double>(k);
    c[static_cast<std::size_t>(k)] = ck;
    mk = amk;
    mk.diagonal().array() += ck;
  }
  return c;
}

std::vector<Scalar> zeta_coeffs_from_orbits(std::span<const Scalar> Z);
std::vector<Scalar> zeta_coeffs_from_determinant(const TransferMatrix& m, int Q);

/// sum_k c_k z^k.
Scalar evaluate_series(std::span<const Scalar> coeffs, Scalar z);

struct K0Bound {
  double p_min;  // r^{2p} e^{h_top} < 1 iff p > p_min
  int k0;        // upper bound for k_0
  int p;         // admissible integer exponent k0 + 1
};

K0Bound k0_bound(double r, double h_top);

/// E(z, k) = (1 - z) exp(sum_{j<=k} z^j / j).
template <class T>
T weierstrass_factor(T z, int k) {
  T s(0), zj(1);
  for (int j = 1; j <= k; ++j) {
    zj *= z;
    s += zj / static_cast<double>(j);
  }
  return (T(1) - z) * std::exp(s);
}

struct ProductValue {
  Scalar value;
  double remainder;  // bound from the factors past n_terms
};

/// exp(-sum_{q<=k0} z^q Z_q / q) prod_{n<=n_terms} E(z lambda_n, k0).
/// Z must hold at least k0 orbit sums; lambda is sorted by modulus.
ProductValue spectral_product(std::span<const Scalar> lambda, std::span<const Scalar> Z, Scalar z, int k0,
                              std::optional<std::size_t> n_terms = std::nullopt);

/// sum_{k>Q} (|z| S)^k / k! with S = sum |lambda_n|: bounds the coefficients
/// of prod (1 - z lambda_n) past degree Q.
double series_remainder(std::span<const Scalar> lambda, Scalar z, int Q);

/// Bound on |log zeta_f^{-1}(z) - log zeta_g^{-1}(z)| when |f - g|_inf <= eps
/// and e^{max Re} <= b1: sum_q (|z| b1)^q tr(A^q) (e^{q eps} - 1) / q.
/// Infinite when the series does not converge.
double perturbation_log_bound(const TransitionStructure& shift, Scalar z, double b1, double eps);

struct TraceRow {
  int m;
  Scalar spectral_sum;  // sum_n lambda_n(f_m)^q
  double defect;        // |spectral_sum - Z_q(f)|
};

struct TraceCheck {
  int q;
  OrbitSum orbit;
  std::vector<TraceRow> rows;
  std::optional<double> slope;  // least-squares slope of log defect over the last half
};

/// f_m = E_m f integrated at depth m + quadrature_extra.
TraceCheck trace_formula_check(const Potential& f, const TransitionStructure& shift, int q,
                               std::span<const int> schedule, const MarkovMeasure& mu, double tol = 1e-14,
                               int quadrature_extra = 4);

/// Least-squares slope of log y against x over the last half of the points
/// (zeros skipped).
std::optional<double> log_slope(std::span<const int> x, std::span<const double> y);

}  // namespace ruelle
