#include "ruelle/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ruelle/errors.hpp"

namespace ruelle {

OrbitSum orbit_sum(const Potential& f, const TransitionStructure& shift, int q, double tol, std::size_t cap) {
  if (q < 1) throw std::invalid_argument("orbit sums start at q = 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const WordList points = periodic_points(shift, q, cap);
  const std::size_t count = points.size();
  OrbitSum out{0.0, 0.0, count};
  if (count == 0) return out;
  const double each = tol / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) out.value += std::exp(birkhoff_sum(f, shift, points[i], each));
  if (!f.locality_depth()) {
    const double top = q * max_real_upper(f, shift, 8);
    out.error = static_cast<double>(count) * std::exp(top) * std::expm1(each);
  }
  return out;
}

std::vector<Scalar> orbit_sums(const Potential& f, const TransitionStructure& shift, int Q, double tol) {
  std::vector<Scalar> z;
  for (int q = 1; q <= Q; ++q) z.push_back(orbit_sum(f, shift, q, tol).value);
  return z;
}

std::vector<Scalar> zeta_coeffs_from_orbits(std::span<const Scalar> Z) {
  if (Z.empty()) throw std::invalid_argument("need at least one orbit sum");
  return newton_coefficients(Z);
}

std::vector<Scalar> zeta_coeffs_from_determinant(const TransferMatrix& m, int Q) {
  if (Q < 1) throw std::invalid_argument("need Q >= 1");
  return faddeev_leverrier(m.entries, Q);
}

Scalar evaluate_series(std::span<const Scalar> coeffs, Scalar z) {
  Scalar acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

K0Bound k0_bound(double r, double h_top) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("k0_bound needs 0 < r < 1");
  const double p_min = h_top / (2.0 * std::log(1.0 / r));
  int k = 0;
  while (k + 1 <= p_min) ++k;
  return {p_min, k, k + 1};
}

ProductValue spectral_product(std::span<const Scalar> lambda, std::span<const Scalar> Z, Scalar z, int k0,
                              std::optional<std::size_t> n_terms) {
  if (k0 < 0) throw std::invalid_argument("k0 must be non-negative");
  if (Z.size() < static_cast<std::size_t>(k0)) throw std::invalid_argument("need Z_1 .. Z_k0");
  Scalar log_pre = 0.0;
  Scalar zq = 1.0;
  for (int q = 1; q <= k0; ++q) {
    zq *= z;
    log_pre -= zq * Z[static_cast<std::size_t>(q) - 1] / static_cast<double>(q);
  }
  const std::size_t n = std::min(n_terms.value_or(lambda.size()), lambda.size());
  Scalar value = std::exp(log_pre);
  for (std::size_t i = 0; i < n; ++i) value *= weierstrass_factor(z * lambda[i], k0);
  // |log E(u, k)| <= |u|^{k+1} / ((k+1)(1 - |u|)) for |u| < 1.
  double s = 0.0;
  for (std::size_t i = n; i < lambda.size(); ++i) {
    const double u = std::abs(z * lambda[i]);
    if (u >= 1.0) return {value, std::numeric_limits<double>::infinity()};
    s += std::pow(u, k0 + 1) / ((k0 + 1) * (1.0 - u));
  }
  return {value, std::abs(value) * std::expm1(s)};
}

double series_remainder(std::span<const Scalar> lambda, Scalar z, int Q) {
  double S = 0.0;
  for (Scalar l : lambda) S += std::abs(l);
  const double x = std::abs(z) * S;
  // Terms x^k / k! for k > Q, summed until they stop mattering.
  double term = 1.0;
  for (int k = 1; k <= Q; ++k) term *= x / k;
  double sum = 0.0;
  for (int k = Q + 1; k < Q + 10000; ++k) {
    term *= x / k;
    sum += term;
    if (term <= sum * 1e-17 || term == 0.0) break;
  }
  return sum;
}

double perturbation_log_bound(const TransitionStructure& shift, Scalar z, double b1, double eps) {
  if (eps == 0.0) return 0.0;
  const Eigen::MatrixXd a = shift.adjacency().cast<double>();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  const double log_x = std::log(std::abs(z) * b1);
  double log_scale = 0.0;  // A^q = power * e^{log_scale}
  double sum = 0.0;
  for (int q = 1; q <= 5000; ++q) {
    power = power * a;
    const double trace = power.trace();
    if (trace > 0.0) {
      const double term =
          std::exp(q * log_x + std::log(trace) + log_scale + std::log(std::expm1(q * eps)) - std::log(q));
      sum += term;
      if (q > 8 && term <= sum * 1e-17) return sum;
    }
    const double scale = power.maxCoeff();
    power /= scale;
    log_scale += std::log(scale);
  }
  return std::numeric_limits<double>::infinity();
}

std::optional<double> log_slope(std::span<const int> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> xs, ys;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (y[i] > 0.0) {
      xs.push_back(x[i]);
      ys.push_back(std::log(y[i]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? std::optional<double>(sxy / sxx) : std::nullopt;
}

TraceCheck trace_formula_check(const Potential& f, const TransitionStructure& shift, int q,
                               std::span<const int> schedule, const MarkovMeasure& mu, double tol,
                               int quadrature_extra) {
  if (schedule.empty()) throw std::invalid_argument("empty m schedule");
  TraceCheck out{q, orbit_sum(f, shift, q, tol), {}, std::nullopt};
  std::vector<double> defects;
  for (int m : schedule) {
    if (m < 1) throw std::invalid_argument("schedule entries must be >= 1");
    const TabulatedFunction fm = project_Em(f, m, mu, m + quadrature_extra, shift, tol);
    const SpectralData s = spectrum(build_matrix(fm));
    const Scalar sum = s.power_sum(q);
    out.rows.push_back({m, sum, std::abs(sum - out.orbit.value)});
    defects.push_back(out.rows.back().defect);
  }
  out.slope = log_slope(schedule, defects);
  return out;
}

}  // namespace ruelle
