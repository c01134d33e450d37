#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ruelle/potential.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

/// One inequality measured <= bound. Envelopes stand in for approximation
/// numbers, which are never computed.
struct BoundReport {
  std::string name;
  double measured;
  double bound;
  bool satisfied;
  std::vector<std::pair<std::string, double>> parameters;
};

BoundReport make_report(std::string name, double measured, double bound,
                        std::vector<std::pair<std::string, double>> parameters = {});

struct ApproxEnvelope {
  double value;     // (C4 / r^2)^q (n - 1)^{-exponent}
  double exponent;  // 2q / (-log_r R)
  bool summable;    // exponent > 1
};

/// Throws RTooSmall when R <= e^{h_top}.
ApproxEnvelope approx_bound(int n, int q, double r, double R, double C4, double h_top);

struct RankStep {
  BoundReport report;  // measured q rank E_m against R^m
  double envelope;     // C4^q r^{2mq}
};

/// Throws HypothesisViolated unless m >= 2, D r^{m+1} <= 1 and q rank E_m <= R^m.
RankStep rank_step_bound(int m, int q, double R, const ConstantSet& c, const TransitionStructure& shift);

/// Number of eigenvalues (with multiplicity) of modulus above threshold.
int count_above(const SpectralData& s, double threshold);

/// One report per m: #{|lambda| > (C2 + 1) theta_m} <= C5 theta_m^{-alpha} R^{m-1}
/// with C5 = (C2 + 1)(4 C2)^alpha c_alpha. Refuses theta_m = 0.
std::vector<BoundReport> counting_check(const SpectralData& s, const ThetaProfile& theta, const ConstantSet& c,
                                        double alpha, double R, double c_alpha, std::span<const int> ms,
                                        double h_top);

/// Smallest c_alpha making counting_check hold at every m in ms. A zero
/// count calibrates as if one eigenvalue were present.
double calibrate_c_alpha(const SpectralData& s, const ThetaProfile& theta, const ConstantSet& c, double alpha,
                         double R, std::span<const int> ms);

struct EmbeddingBound {
  double per_m;   // 3 (theta / theta')^m
  bool summable;  // N theta < theta'
  double tail;    // 3 (N - 1) sum_{m >= 1} (N theta / theta')^m, infinite otherwise
};

EmbeddingBound embedding_bound(double theta, double theta_prime, int m, int n);

struct CohomologyWitness {
  Symbol column;  // branching column i
  Word w_bar;     // shortest return word at i
  Symbol j1, j2;
  Word w_tilde;
  Word v;
};

/// Built from the shift by the deterministic recipe; every property is
/// checked before returning.
CohomologyWitness cohomology_witness(const TransitionStructure& shift);

/// w^(m) = w_tilde repeated m times.
Word witness_power(const CohomologyWitness& w, int m);

/// S_{2|w|+|v|} phi((wwv)*) - S_{|w|} phi(w*) - S_{|w|+|v|} phi((wv)*) with w = w^(m).
Scalar cohomology_defect(const Potential& phi, const TransitionStructure& shift, const CohomologyWitness& w,
                         int m, double tol = 1e-12);

/// (1/n) 1_[wwv] with w = w^(m).
TabulatedFunction cohomology_perturbation(const TransitionStructure& shift, const CohomologyWitness& w, int m,
                                          int n);

/// Running sums of |lambda_n|^p.
std::vector<double> ideal_partial_sums(std::span<const Scalar> lambda, double p);

/// Envelope for sum_n a_n(L^q - L_{g_m}^q): the minimum over n0 of
/// 2 n0 q C2^{q-1} C3 theta_m + 4 (C4/r^2)^q sum_{l >= n0} (l - 1)^{-e}.
/// Needs C4 and a summable exponent; returns infinity otherwise.
double trace_norm_envelope(const ConstantSet& c, const ThetaProfile& theta, int m, int q, double R, double h_top);

// Inequality suite -----------------------------------------------------------

/// E_m against phi: max (real phi only), variation, sup and theta' norm
/// bounds for the fixed-theta Lipschitz norms.
std::vector<BoundReport> projection_reports(const TabulatedFunction& phi, int m, double theta,
                                            double theta_prime, const MarkovMeasure& mu);

BoundReport lasota_yorke_report(const Potential& f, const TabulatedFunction& phi, int k);

/// |L_f (phi - E_m phi)|_B / |phi|_B against C2 theta_{m+1}.
BoundReport projection_envelope_report(const TabulatedFunction& f, const TabulatedFunction& phi,
                                       const ThetaProfile& theta, const ConstantSet& c, int m,
                                       const MarkovMeasure& mu);

}  // namespace ruelle
