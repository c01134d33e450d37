#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ruelle/potential.hpp"

namespace ruelle {

/// Matrix of L_f on L_d for a locally constant f, indexed (target, source)
/// over the depth-d cylinder basis.
struct TransferMatrix {
  BasisPtr basis;
  int potential_depth;
  Eigen::MatrixXcd entries;

  int basis_depth() const { return basis->depth(); }
  Eigen::Index dimension() const { return entries.rows(); }
};

/// Default basis depth is max(m - 1, 1); any d >= max(m - 1, 1) is exact.
TransferMatrix build_matrix(const TabulatedFunction& f, std::optional<int> basis_depth = std::nullopt,
                            std::size_t cap = kDefaultWordCap);

/// L_f phi for tabulated f and phi, on depth max(depth f, depth phi) - 1
/// (at least 1).
TabulatedFunction apply(const TabulatedFunction& f, const TabulatedFunction& phi);

/// (L_f phi)(p) for an arbitrary potential.
Scalar apply_at(const Potential& f, const TransitionStructure& shift, const TabulatedFunction& phi,
                const Point& p, double tol);

struct SpectrumOptions {
  double cluster_tol = 1e-8;  // relative
  double rank_tol = 1e-12;    // singular values below rank_tol * sigma_max count as zero
  Eigen::Index max_dimension = 4096;
};

struct SpectralData {
  // Clusters sorted by modulus (ties by argument); 0 comes last when present.
  std::vector<Scalar> eigenvalues;
  std::vector<int> multiplicities;
  // Unclustered non-zero eigenvalues, same order.
  std::vector<Scalar> nonzero;
  int zero_multiplicity = 0;
  int dimension = 0;
  double cluster_tol = 1e-8;

  /// sum_n lambda_n^q over the non-zero eigenvalues.
  Scalar power_sum(int q) const;
  Scalar leading() const { return nonzero.empty() ? Scalar(0.0) : nonzero.front(); }
};

/// Non-zero spectrum from the restriction of M to the stable range of its
/// powers, so that nilpotent blocks never perturb it.
SpectralData spectrum(const Eigen::MatrixXcd& m, const SpectrumOptions& options = {});
SpectralData spectrum(const TransferMatrix& m, const SpectrumOptions& options = {});

/// Same non-zero clusters with the same multiplicities, to rel_tol.
bool same_nonzero_spectrum(const SpectralData& a, const SpectralData& b, double rel_tol = 1e-8);

/// Eigenvector for the eigenvalue of largest modulus, phase-normalised so
/// that its largest entry is real and positive.
Eigen::VectorXcd leading_eigenvector(const TransferMatrix& m);

struct PressureResult {
  double value;
  double error;  // |P(Re f) - value| <= error
  double lower() const { return value - error; }
  double upper() const { return value + error; }
};

/// log lambda_1 of the matrix of E_m(Re f), integrated at depth m + 4.
PressureResult pressure(const Potential& f, const TransitionStructure& shift, int m, const MarkovMeasure& mu,
                        double tol = 1e-14);

struct LasotaYorke {
  double lhs;  // var_k(L_f phi), exact for tables, sampled otherwise
  double rhs;  // N e^{max Re f} (3 var_{k+1}(f) |phi|_inf + var_{k+1}(phi))
  bool satisfied;
};

LasotaYorke lasota_yorke_check(const Potential& f, const TabulatedFunction& phi, int k,
                               std::size_t sample_budget = 1u << 14, double tol = 1e-14);

struct OperatorBounds {
  double norm;                       // |L_g|_B <= C2
  double finite_rank_error;          // |L^q - K^(q)|_B <= C2^q theta_{m+1}^q
  std::optional<double> projection;  // |L_g - L_{g_m}|_B <= C3 theta_m, needs theta_m <= 1
  std::uint64_t rank;                // rank K^(q) <= q rank E_m
};

/// Throws HypothesisViolated when theta_{m+1} > 1.
OperatorBounds operator_bounds(const ConstantSet& c, const ThetaProfile& theta, int m, int q,
                               const TransitionStructure& shift);

}  // namespace ruelle
