// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <string>

#include "ruelle/diagnostics.hpp"
#include "ruelle/zeta.hpp"
#include "support.hpp"

using namespace ruelle;

namespace {

int failures = 0;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void verdict(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Sample {
  Eigen::MatrixXi a;
  int depth;
  oracle::Table table;
};

// 20 random locally constant potentials, depths 1-3, half of them complex.
std::vector<Sample> corpus() {
  std::mt19937_64 rng(20240611);
  std::vector<Sample> out;
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXi a = i % 2 == 0 ? full(2) : golden();
    const int depth = 1 + i % 3;
    out.push_back({a, depth, oracle::random_table(a, depth, rng, i % 4 < 2 ? 0.0 : 0.5)});
  }
  return out;
}

void finite_trace_formula(const std::vector<Sample>& samples) {
  Stopwatch t;
  double worst = 0;
  for (const Sample& s : samples) {
    const TransitionStructure shift(s.a);
    const auto f = to_library(shift, s.table, s.depth);
    const Eigen::MatrixXcd m = build_matrix(f).entries;
    Eigen::MatrixXcd p = m;
    for (int q = 1; q <= 8; ++q, p = p * m) {
      const Scalar z = orbit_sum(Potential::table(f), shift, q).value;
      const Scalar brute = oracle::orbit_sum(s.a, s.table, s.depth, q);
      worst = std::max({worst, std::abs(p.trace() - z) / std::abs(z), std::abs(brute - z) / std::abs(brute)});
    }
  }
  verdict(1, worst <= 1e-10 && t.seconds() < 10, "finite trace formula, 20 potentials, q = 1..8",
          fmt("max relative error %.2e, %.2f s", worst, t.seconds()));
}

void spectral_representation(const std::vector<Sample>& samples) {
  double worst = 0;
  for (const Sample& s : samples) {
    const TransitionStructure shift(s.a);
    const auto f = to_library(shift, s.table, s.depth);
    const auto det = zeta_coeffs_from_determinant(build_matrix(f), 8);
    const auto orb = zeta_coeffs_from_orbits(orbit_sums(Potential::table(f), shift, 8));
    double scale = 1.0, err = 0.0;
    for (std::size_t k = 0; k <= 8; ++k) {
      scale = std::max(scale, std::abs(orb[k]));
      err = std::max(err, std::abs(det[k] - orb[k]));
    }
    worst = std::max(worst, err / scale);
  }
  verdict(2, worst <= 1e-10, "determinant coefficients equal orbit coefficients through degree 8",
          fmt("max error relative to max(1, max|c_k|) %.2e", worst));
}

void depth_stability(const std::vector<Sample>& samples) {
  int unstable = 0, compared = 0;
  for (const Sample& s : samples) {
    const TransitionStructure shift(s.a);
    const auto f = to_library(shift, s.table, s.depth);
    const int d0 = std::max(s.depth - 1, 1);
    const auto base = spectrum(build_matrix(f, d0));
    for (int d = d0 + 1; d <= s.depth + 3; ++d, ++compared)
      if (!same_nonzero_spectrum(base, spectrum(build_matrix(f, d)), 1e-8)) ++unstable;
  }
  verdict(3, unstable == 0, "nonzero spectrum invariant across basis depths m-1..m+3",
          fmt("%.0f of %.0f comparisons differ", unstable, compared));
}

void trace_convergence() {
  Stopwatch t;
  const auto full2 = TransitionStructure::full_shift(2);
  const auto mu = MarkovMeasure::parry(full2);
  const std::vector<int> ms{2, 3, 4, 5, 6, 7};
  const double slope_cap = std::log(0.5) + 0.5;
  bool ok = true;
  std::string detail;
  for (int q : {2, 3}) {
    const auto check = trace_formula_check(Potential::geometric(0.5), full2, q, ms, mu, 1e-15);
    for (std::size_t i = 2; i < check.rows.size(); ++i) ok &= check.rows[i].defect < check.rows[i - 1].defect;
    const double d7 = check.rows.back().defect;
    ok &= d7 <= 1e-6 && check.slope && *check.slope <= slope_cap;
    detail += fmt("q=%.0f: delta_7 %.2e slope %.2f; ", q, d7, check.slope.value_or(0.0));
  }
  ok &= t.seconds() < 60;
  verdict(4, ok, "trace-formula defects decay for the geometric family r = 1/2",
          detail + fmt("slope cap %.2f, %.2f s", slope_cap, t.seconds()));
}

void weierstrass_product() {
  const auto full2 = TransitionStructure::full_shift(2);
  const auto mu = MarkovMeasure::parry(full2);
  const auto f = Potential::geometric(0.5);
  const int m = 7, extra = 4;
  const double tol = 1e-15;
  const auto k0 = k0_bound(0.5, topological_entropy(full2)).k0;
  const auto fm = project_Em(f, m, mu, m + extra, full2, tol);
  const auto s = spectrum(build_matrix(fm));
  const auto Z = orbit_sums(f, full2, 12, tol);
  const auto series = zeta_coeffs_from_orbits(Z);
  const double eps = var_upper_bound(f, full2, m).value + var_upper_bound(f, full2, m + extra).value + tol;
  const double b1 = std::exp(max_real_upper(f, full2, 8));
  const double radius = 0.5 / std::abs(s.leading());
  int bad = 0;
  double worst_gap = 0, worst_rem = 0;
  for (int i = 0; i < 20; ++i) {
    const Scalar z = std::polar(radius * (1 + i / 4) / 5.0, (i % 4) * std::numbers::pi / 2 + 0.3 * (i / 4));
    const auto p = spectral_product(s.nonzero, Z, z, k0);
    const double prod_rem = p.remainder + std::abs(p.value) * std::expm1(perturbation_log_bound(full2, z, b1, eps));
    const double ser_rem = series_remainder(s.nonzero, z, 12);
    const double gap = std::abs(p.value - evaluate_series(series, z));
    worst_gap = std::max(worst_gap, gap);
    worst_rem = std::max({worst_rem, prod_rem, ser_rem});
    if (gap > prod_rem + ser_rem || prod_rem > 1e-5 || ser_rem > 1e-5 || gap > 1e-5) ++bad;
  }
  verdict(5, k0 == 0 && bad == 0, "Weierstrass product matches the degree-12 orbit series at 20 points",
          fmt("k0 %.0f, max gap %.2e, max remainder %.2e", k0, worst_gap, worst_rem));
}

void inequality_suite() {
  Stopwatch t;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 2);
  const std::vector<Eigen::MatrixXi> mats{full(2), golden(), test_matrices()[3]};
  int total = 0, violated = 0;
  auto tally = [&](const BoundReport& r) {
    ++total;
    if (!r.satisfied) ++violated;
  };

  // projection bounds, 100 random tabulated functions
  for (int i = 0; i < 100; ++i) {
    const auto& a = mats[static_cast<std::size_t>(i % 3)];
    const TransitionStructure shift(a);
    const int depth = 1 + i % 5;
    const auto phi = to_library(shift, oracle::random_table(a, depth, rng, i % 2 ? 0.5 : 0.0), depth);
    const auto mu = MarkovMeasure::parry(shift);
    for (int m = 1; m <= depth; ++m)
      for (const auto& r : projection_reports(phi, m, 0.2, 0.5, mu)) tally(r);
  }
  const int projection_count = total;

  // Lasota-Yorke, 100 triples
  const auto full2 = TransitionStructure::full_shift(2);
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 4;
    const auto phi = to_library(full2, oracle::random_table(full(2), 1 + i % 4, rng, 0.3), 1 + i % 4);
    const Potential f = i % 3 == 0   ? Potential::geometric(0.5)
                        : i % 3 == 1 ? Potential::geometric(0.3, 0.8)
                                     : Potential::table(to_library(full2, oracle::random_table(full(2), 3, rng, 0.2), 3));
    tally(lasota_yorke_report(f, phi, k));
  }

  // finite-rank step envelope, 50 samples
  const auto th = ThetaProfile::geometric(1.0, 0.5);
  const auto mu2 = MarkovMeasure::parry(full2);
  const auto geo = Potential::geometric(0.5);
  const auto cg = constants_for(geo, th, full2);
  const auto geo_table = project_Em(geo, 6, mu2, 10, full2, 1e-15);
  for (int i = 0; i < 50; ++i) {
    const int m = 2 + i % 4;
    const auto phi = to_library(full2, oracle::random_table(full(2), m + 2, rng, 0.4), m + 2);
    if (i % 2 == 0) {
      tally(projection_envelope_report(geo_table, phi, th, cg, m, mu2));
    } else {
      const auto tf = Potential::table(to_library(full2, oracle::random_table(full(2), 3, rng, 0.2), 3));
      tally(projection_envelope_report(*tf.table_data(), phi, th, constants_for(tf, th, full2), m, mu2));
    }
  }

  // counting bound, c_alpha calibrated once on f = 0 at m = 2
  const double R = 2.5, h = std::log(2.0);
  const std::vector<int> ms{2, 3, 4, 5, 6, 7};
  const auto zero = Potential::constant(0.0);
  const auto s0 = spectrum(build_matrix(sample_table(zero, full2, 0)));
  const double ca = calibrate_c_alpha(s0, th, constants_for(zero, th, full2), 1.0, R, std::vector<int>{2});
  for (const auto& r : counting_check(s0, th, constants_for(zero, th, full2), 1.0, R, ca, ms, h)) tally(r);
  for (double r : {0.5, 0.4, 0.3}) {
    const auto f = Potential::geometric(r);
    const auto s = spectrum(build_matrix(project_Em(f, 7, mu2, 11, full2, 1e-15)));
    for (const auto& rep : counting_check(s, th, constants_for(f, th, full2), 1.0, R, ca, ms, h)) tally(rep);
  }

  verdict(6, violated == 0 && t.seconds() < 120, "inequality suite",
          fmt("%.0f reports (%.0f from the projection bounds), ", total, projection_count) +
              fmt("%.0f violations, %.2f s", violated, t.seconds()));
}

void cohomology() {
  const auto gm = TransitionStructure::golden_mean();
  const auto w = cohomology_witness(gm);
  double worst = 0;
  int basis = 0;
  for (int m = 1; m <= 4; ++m) {
    const WordList words = enumerate_words(gm, m);
    for (std::size_t i = 0; i < words.size(); ++i, ++basis) {
      const auto phi = Potential::table(TabulatedFunction::indicator(gm, words[i]));
      worst = std::max(worst, std::abs(cohomology_defect(phi, gm, w, m, 1e-14)));
    }
  }
  std::mt19937_64 rng(3);
  const auto base = Potential::table(to_library(gm, oracle::random_table(golden(), 2, rng), 2));
  bool bumped = true;
  std::string detail;
  for (int n : {1, 2, 4}) {
    const auto eps = Potential::table(cohomology_perturbation(gm, w, 1, n));
    const double d = std::abs(cohomology_defect(Potential::linear_combination({{1.0, base}, {1.0, eps}}), gm, w, 1, 1e-14));
    bumped &= d >= 1.0 / n - 1e-10;
    detail += fmt("n=%.0f defect %.6f; ", n, d);
  }
  verdict(7, worst <= 3e-10 && bumped, "cohomology obstruction on the golden mean",
          fmt("%.0f basis functions, max defect %.2e; ", basis, worst) + detail);
}

void combinatorics() {
  int mismatches = 0, checks = 0;
  for (const auto& a : test_matrices()) {
    const TransitionStructure s(a);
    for (int q = 1; q <= 12; ++q, ++checks)
      if (count_periodic_points(s, q) != static_cast<std::uint64_t>(oracle::trace_power(a, q))) ++mismatches;
    for (int m = 1; m <= 10; ++m, ++checks)
      if (count_words(s, m) != static_cast<std::uint64_t>(oracle::word_count(a, m)) ||
          enumerate_words(s, m).size() != static_cast<std::size_t>(oracle::word_count(a, m)))
        ++mismatches;
  }
  verdict(8, mismatches == 0, "periodic point and word counts match matrix powers on 5 matrices",
          fmt("%.0f of %.0f counts differ", mismatches, checks));
}

}  // namespace

int main() {
  const auto samples = corpus();
  finite_trace_formula(samples);
  spectral_representation(samples);
  depth_stability(samples);
  trace_convergence();
  weierstrass_product();
  inequality_suite();
  cohomology();
  combinatorics();
  return failures;
}
