#include "ruelle/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ruelle/errors.hpp"

namespace ruelle {

TransferMatrix build_matrix(const TabulatedFunction& f, std::optional<int> basis_depth, std::size_t cap) {
  const int m = f.depth();
  const int d = basis_depth.value_or(std::max(m - 1, 1));
  if (d < std::max(m - 1, 1))
    throw std::invalid_argument("basis depth " + std::to_string(d) + " is below max(m - 1, 1) for m = " +
                                std::to_string(m));
  const TransitionStructure& shift = f.shift();
  auto basis = make_basis(shift, d, cap);
  const auto n = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(n, n);
  Word aw(static_cast<std::size_t>(d) + 1);
  for (Eigen::Index target = 0; target < n; ++target) {
    auto w = basis->words()[static_cast<std::size_t>(target)];
    std::copy(w.begin(), w.end(), aw.begin() + 1);
    for (Symbol a = 0; a < shift.size(); ++a) {
      if (!shift.allowed(a, w[0])) continue;
      aw[0] = a;
      const std::ptrdiff_t source = basis->index_of(aw);
      entries(target, source) += std::exp(f.at(aw));
    }
  }
  return {basis, m, std::move(entries)};
}

TabulatedFunction apply(const TabulatedFunction& f, const TabulatedFunction& phi) {
  if (f.shift().adjacency() != phi.shift().adjacency())
    throw std::invalid_argument("f and phi live on different shifts");
  const TransitionStructure& shift = f.shift();
  const int d = std::max(std::max(f.depth(), phi.depth()) - 1, 1);
  auto basis = make_basis(shift, d);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  Word aw(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    auto w = basis->words()[i];
    std::copy(w.begin(), w.end(), aw.begin() + 1);
    for (Symbol a = 0; a < shift.size(); ++a) {
      if (!shift.allowed(a, w[0])) continue;
      aw[0] = a;
      out(static_cast<Eigen::Index>(i)) += std::exp(f.at(aw)) * phi.at(aw);
    }
  }
  return {basis, out};
}

Scalar apply_at(const Potential& f, const TransitionStructure& shift, const TabulatedFunction& phi,
                const Point& p, double tol) {
  Scalar sum = 0.0;
  const Symbol head = p.at(0);
  for (Symbol a = 0; a < shift.size(); ++a) {
    if (!shift.allowed(a, head)) continue;
    Point ap{Word{a}, p.cycle};
    ap.prefix.insert(ap.prefix.end(), p.prefix.begin(), p.prefix.end());
    sum += std::exp(f.evaluate(shift, ap, tol)) * phi(ap);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Spectra

Scalar SpectralData::power_sum(int q) const {
  Scalar sum = 0.0;
  for (Scalar l : nonzero) sum += std::pow(l, q);
  return sum;
}

namespace {

bool modulus_then_argument(Scalar a, Scalar b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-12 * std::max(ma, mb)) return ma > mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace

SpectralData spectrum(const Eigen::MatrixXcd& m, const SpectrumOptions& options) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectrum of a non-square matrix");
  if (m.rows() > options.max_dimension)
    throw DepthTooLarge("matrix dimension " + std::to_string(m.rows()) + " exceeds the dense cap");
  const Eigen::Index n = m.rows();
  SpectralData out;
  out.dimension = static_cast<int>(n);
  out.cluster_tol = options.cluster_tol;

  // Orthonormal basis of range(M^k) until the rank stops dropping. On that
  // range M is invertible and carries every non-zero eigenvalue.
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(n, n);
  double scale = -1.0;
  Eigen::Index rank = n;
  for (Eigen::Index iter = 0; iter <= n; ++iter) {
    const Eigen::MatrixXcd image = m * q;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(image, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    if (scale < 0.0) scale = sigma.size() ? sigma(0) : 0.0;
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > options.rank_tol * scale) ++r;
    q = svd.matrixU().leftCols(r);
    const bool stable = r == rank;
    rank = r;
    if (stable || r == 0) break;
  }

  std::vector<Scalar> raw;
  if (rank > 0) {
    const Eigen::MatrixXcd core = q.adjoint() * m * q;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(core, false);
    if (solver.info() != Eigen::Success) throw EigensolveFailure("eigensolver did not converge");
    for (Eigen::Index i = 0; i < rank; ++i) raw.push_back(solver.eigenvalues()(i));
  }
  std::sort(raw.begin(), raw.end(), modulus_then_argument);
  out.nonzero = raw;
  out.zero_multiplicity = static_cast<int>(n - rank);

  std::vector<std::vector<Scalar>> clusters;
  std::vector<Scalar> centers;
  for (Scalar l : raw) {
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (std::abs(l - centers[c]) <= options.cluster_tol * std::max(std::abs(l), std::abs(centers[c]))) {
        clusters[c].push_back(l);
        Scalar mean = 0.0;
        for (Scalar x : clusters[c]) mean += x;
        centers[c] = mean / static_cast<double>(clusters[c].size());
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({l});
      centers.push_back(l);
    }
  }
  std::vector<std::size_t> order(clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return modulus_then_argument(centers[a], centers[b]); });
  for (std::size_t i : order) {
    out.eigenvalues.push_back(centers[i]);
    out.multiplicities.push_back(static_cast<int>(clusters[i].size()));
  }
  if (out.zero_multiplicity > 0) {
    out.eigenvalues.push_back(0.0);
    out.multiplicities.push_back(out.zero_multiplicity);
  }
  return out;
}

SpectralData spectrum(const TransferMatrix& m, const SpectrumOptions& options) {
  return spectrum(m.entries, options);
}

bool same_nonzero_spectrum(const SpectralData& a, const SpectralData& b, double rel_tol) {
  auto clusters = [](const SpectralData& s) {
    std::vector<std::pair<Scalar, int>> out;
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      if (s.eigenvalues[i] != 0.0) out.emplace_back(s.eigenvalues[i], s.multiplicities[i]);
    return out;
  };
  auto x = clusters(a);
  auto y = clusters(b);
  if (x.size() != y.size()) return false;
  std::vector<bool> used(y.size(), false);
  for (const auto& [l, mult] : x) {
    bool found = false;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (used[j] || y[j].second != mult) continue;
      if (std::abs(l - y[j].first) <= rel_tol * std::max(std::abs(l), std::abs(y[j].first))) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Eigen::VectorXcd leading_eigenvector(const TransferMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.entries, true);
  if (solver.info() != Eigen::Success) throw EigensolveFailure("eigensolver did not converge");
  Eigen::Index best = 0;
  solver.eigenvalues().cwiseAbs().maxCoeff(&best);
  Eigen::VectorXcd v = solver.eigenvectors().col(best);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::abs(v(big)) / v(big);
  return v / v.norm();
}

// ---------------------------------------------------------------------------
// Pressure

PressureResult pressure(const Potential& f, const TransitionStructure& shift, int m, const MarkovMeasure& mu,
                        double tol) {
  if (m < 0) throw std::invalid_argument("pressure needs m >= 0");
  double error = 0.0;
  TabulatedFunction fm = [&] {
    if (auto depth = f.locality_depth(); depth && *depth <= m) return sample_table(f, shift, m, tol);
    error = var_upper_bound(f, shift, m).value;
    if (const TabulatedFunction* t = f.table_data()) return project_Em(*t, m, mu);
    error += var_upper_bound(f, shift, m + 4).value + tol;
    return project_Em(f, m, mu, m + 4, shift, tol);
  }();
  const SpectralData s = spectrum(build_matrix(fm.real_part()));
  const Scalar l1 = s.leading();
  if (!(l1.real() > 0.0)) throw EigensolveFailure("leading eigenvalue is not positive");
  return {std::log(l1.real()), error};
}

// ---------------------------------------------------------------------------
// Lasota-Yorke

LasotaYorke lasota_yorke_check(const Potential& f, const TabulatedFunction& phi, int k,
                               std::size_t sample_budget, double tol) {
  if (k < 1) throw std::invalid_argument("Lasota-Yorke check needs k >= 1");
  const TransitionStructure& shift = phi.shift();
  double lhs = 0.0;
  if (const TabulatedFunction* t = f.table_data()) {
    lhs = apply(*t, phi).variation(k);
  } else if (f.family() == Potential::Family::constant) {
    lhs = apply(sample_table(f, shift, 0, tol), phi).variation(k);
  } else {
    int lookahead = 1;
    while (lookahead < 12 && count_words(shift, k + lookahead + 1) <= sample_budget) ++lookahead;
    lookahead = std::max(lookahead, phi.depth() - k);
    lhs = variation_estimate(shift, k, lookahead,
                             [&](const Point& p) { return apply_at(f, shift, phi, p, tol); });
  }
  const double e_max = std::exp(max_real_upper(f, shift, 8, tol));
  const double rhs = shift.size() * e_max *
                     (3.0 * var_upper_bound(f, shift, k + 1).value * phi.sup_norm() + phi.variation(k + 1));
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

// ---------------------------------------------------------------------------
// Closed-form operator bounds

OperatorBounds operator_bounds(const ConstantSet& c, const ThetaProfile& theta, int m, int q,
                               const TransitionStructure& shift) {
  if (m < 1 || q < 1) throw std::invalid_argument("operator bounds need m, q >= 1");
  const double next = theta(m + 1);
  if (next > 1.0)
    throw HypothesisViolated("theta_" + std::to_string(m + 1) + " = " + std::to_string(next) + " > 1");
  OperatorBounds b{};
  b.norm = c.C2;
  b.finite_rank_error = std::pow(c.C2 * next, q);
  if (theta(m) <= 1.0) b.projection = c.C3 * theta(m);
  const std::uint64_t words = count_words(shift, m);
  b.rank = words > UINT64_MAX / static_cast<std::uint64_t>(q) ? UINT64_MAX : words * static_cast<std::uint64_t>(q);
  return b;
}

}  // namespace ruelle
