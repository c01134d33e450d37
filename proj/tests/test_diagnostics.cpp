#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ruelle/diagnostics.hpp"
#include "ruelle/errors.hpp"
#include "support.hpp"

using namespace ruelle;

TEST_CASE("reports") {
  CHECK(make_report("x", 1.0, 1.0).satisfied);
  CHECK_FALSE(make_report("x", 1.1, 1.0).satisfied);
}

TEST_CASE("approximation envelope") {
  const auto e = approx_bound(10, 2, 0.5, 2.5, 3.0, std::log(2.0));
  CHECK(e.exponent == doctest::Approx(4.0 / (std::log(2.5) / std::log(2.0))));
  CHECK(e.summable);
  CHECK_THROWS_AS(approx_bound(10, 1, 0.5, 1.5, 3.0, std::log(2.0)), RTooSmall);
}

TEST_CASE("counting") {
  const auto s2 = TransitionStructure::full_shift(2);
  const auto th = ThetaProfile::geometric(1.0, 0.5);
  const auto c = constants_for(Potential::constant(0.0), th, s2);
  const auto s = spectrum(build_matrix(TabulatedFunction::constant(s2, 0.0)));
  const std::vector<int> ms{2, 3, 4, 5, 6};
  const double ca = calibrate_c_alpha(s, th, c, 1.0, 2.5, std::vector<int>{2});
  for (const auto& r : counting_check(s, th, c, 1.0, 2.5, ca, ms, std::log(2.0))) {
    CHECK(r.measured <= 1.0);
    CHECK(r.satisfied);
  }
  CHECK_THROWS_AS(counting_check(s, th, c, 1.0, 1.9, ca, ms, std::log(2.0)), RTooSmall);
  // a halved C2 breaks the calibration point
  auto bad = c;
  bad.C2 /= 2;
  CHECK_FALSE(counting_check(s, th, bad, 1.0, 2.5, ca, std::vector<int>{2}, std::log(2.0))[0].satisfied);
}

TEST_CASE("embedding") {
  CHECK(embedding_bound(0.2, 0.5, 2, 2).summable);
  CHECK_FALSE(embedding_bound(0.25, 0.5, 2, 2).summable);  // N theta = theta'
  CHECK(embedding_bound(0.2, 0.5, 2, 2).per_m == doctest::Approx(3 * 0.16));
  CHECK(std::isinf(embedding_bound(0.3, 0.5, 1, 2).tail));
}

TEST_CASE("cohomology witness on the golden mean") {
  const auto gm = TransitionStructure::golden_mean();
  const auto w = cohomology_witness(gm);
  CHECK(w.column == 0);
  CHECK(w.w_bar == Word{0, 0});
  CHECK(w.j1 == 0);
  CHECK(w.j2 == 1);
  const Word p = witness_power(w, 2);
  CHECK(gm.admissible(p));
  // locally constant functions have zero defect
  for (int m = 1; m <= 3; ++m) {
    const WordList words = enumerate_words(gm, m);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto phi = Potential::table(TabulatedFunction::indicator(gm, words[i]));
      CHECK(std::abs(cohomology_defect(phi, gm, w, m)) < 1e-12);
    }
  }
  for (int n : {1, 2, 4}) {
    const auto eps = Potential::table(cohomology_perturbation(gm, w, 1, n));
    CHECK(std::abs(cohomology_defect(eps, gm, w, 1)) >= 1.0 / n - 1e-12);
  }
}

TEST_CASE("defect is linear") {
  const auto gm = TransitionStructure::golden_mean();
  const auto w = cohomology_witness(gm);
  std::mt19937_64 rng(23);
  const auto a = to_library(gm, oracle::random_table(golden(), 4, rng), 4);
  const auto b = to_library(gm, oracle::random_table(golden(), 4, rng), 4);
  const Scalar lhs = cohomology_defect(Potential::table(a + b), gm, w, 1);
  const Scalar rhs = cohomology_defect(Potential::table(a), gm, w, 1) + cohomology_defect(Potential::table(b), gm, w, 1);
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("projection bounds") {
  const auto s = TransitionStructure::full_shift(2);
  const auto mu = MarkovMeasure::parry(s);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 5; ++i) {
    const auto phi = to_library(s, oracle::random_table(full(2), 4, rng), 4);
    for (int m = 1; m <= 3; ++m)
      for (const auto& r : projection_reports(phi, m, 0.2, 0.5, mu)) CHECK_MESSAGE(r.satisfied, r.name);
  }
}

TEST_CASE("finite-rank step envelope") {
  const auto s = TransitionStructure::full_shift(2);
  const auto th = ThetaProfile::geometric(1.0, 0.5);
  const auto f = project_Em(Potential::geometric(0.5), 5, MarkovMeasure::parry(s), 9, s);
  const auto c = constants_for(Potential::geometric(0.5), th, s);
  std::mt19937_64 rng(31);
  for (int m = 2; m <= 4; ++m) {
    const auto phi = to_library(s, oracle::random_table(full(2), 5, rng), 5);
    CHECK(projection_envelope_report(f, phi, th, c, m, MarkovMeasure::parry(s)).satisfied);
  }
}

TEST_CASE("ideal partial sums and trace-norm envelope") {
  const std::vector<Scalar> l{1.0, 0.5, 0.25};
  const auto p = ideal_partial_sums(l, 1.0);
  CHECK(p.back() == doctest::Approx(1.75));
  const auto s = TransitionStructure::full_shift(2);
  const auto th = ThetaProfile::geometric(1.0, 0.5);
  const auto c = constants_for(Potential::geometric(0.5), th, s);
  CHECK(trace_norm_envelope(c, th, 4, 1, 2.5, std::log(2.0)) > 0.0);
}

TEST_CASE("rank step") {
  const auto s = TransitionStructure::full_shift(2);
  const auto th = ThetaProfile::geometric(1.0, 0.5);
  const auto c = constants_for(Potential::geometric(0.5), th, s);
  const auto r = rank_step_bound(4, 1, 2.5, c, s);
  CHECK(r.report.measured == 16);
  CHECK(r.report.satisfied);
  CHECK_THROWS_AS(rank_step_bound(1, 1, 2.5, c, s), HypothesisViolated);
}
