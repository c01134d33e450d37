#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "ruelle/errors.hpp"
#include "ruelle/zeta.hpp"
#include "support.hpp"

using namespace ruelle;

TEST_CASE("orbit sums") {
  const auto full2 = TransitionStructure::full_shift(2);
  CHECK(std::abs(orbit_sum(Potential::constant(0.0), full2, 3).value - 8.0) < 1e-12);
  std::mt19937_64 rng(17);
  for (const auto& a : test_matrices()) {
    const TransitionStructure s(a);
    const auto t = oracle::random_table(a, 2, rng, 0.4);
    const auto f = Potential::table(to_library(s, t, 2));
    for (int q = 1; q <= 6; ++q) {
      const Scalar expected = oracle::orbit_sum(a, t, 2, q);
      CHECK(std::abs(orbit_sum(f, s, q).value - expected) <= 1e-12 * std::abs(expected));
    }
  }
  for (int q = 1; q <= 5; ++q) {
    const auto z = orbit_sum(Potential::geometric(0.5), full2, q, 1e-14);
    CHECK(std::abs(z.value.real() - oracle::geometric_orbit_sum(full2.adjacency(), q, 0.5, 0.5)) <= 1e-12 * z.value.real());
  }
}

TEST_CASE("newton and faddeev-leverrier agree with the expanded product") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(5, 5);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  const auto expected = oracle::product_coefficients(es.eigenvalues(), 7);
  const auto fl = faddeev_leverrier(m, 7);
  std::vector<Scalar> sums;
  Eigen::MatrixXcd p = m;
  for (int q = 1; q <= 7; ++q, p = p * m) sums.push_back(p.trace());
  const auto nw = newton_coefficients<Scalar>(sums);
  for (std::size_t k = 0; k <= 7; ++k) {
    CHECK(std::abs(fl[k] - expected[k]) < 1e-10);
    CHECK(std::abs(nw[k] - expected[k]) < 1e-10);
  }
  // real instantiation
  const auto r = newton_coefficients<double>(std::vector<double>{3.0, 5.0});
  CHECK(r[1] == -3.0);
  CHECK(r[2] == 2.0);
}

TEST_CASE("golden mean zeta is 1 - z - z^2") {
  const auto gm = TransitionStructure::golden_mean();
  const auto c = zeta_coeffs_from_orbits(orbit_sums(Potential::constant(0.0), gm, 6));
  CHECK(std::abs(c[1] + 1.0) < 1e-12);
  CHECK(std::abs(c[2] + 1.0) < 1e-12);
  for (std::size_t k = 3; k <= 6; ++k) CHECK(std::abs(c[k]) < 1e-11);
  const auto d = zeta_coeffs_from_determinant(build_matrix(TabulatedFunction::constant(gm, 0.0), 2), 6);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(c[k] - d[k]) < 1e-12);
  CHECK(std::abs(evaluate_series(c, 0.5) - 0.25) < 1e-12);
}

TEST_CASE("k0 bound") {
  const auto k = k0_bound(0.5, std::log(2.0));
  CHECK(k.p_min == doctest::Approx(0.5));
  CHECK(k.k0 == 0);
  CHECK(k.p == 1);
  CHECK(k0_bound(0.9, std::log(2.0)).k0 >= 3);
}

TEST_CASE("weierstrass factor") {
  CHECK(weierstrass_factor(Scalar(0.3), 0) == Scalar(0.7));
  CHECK(std::abs(weierstrass_factor(0.3, 2) - 0.7 * std::exp(0.3 + 0.045)) < 1e-15);
  CHECK(weierstrass_factor(Scalar(1.0), 3) == Scalar(0.0));
}

TEST_CASE("spectral product for a locally constant potential") {
  const auto gm = TransitionStructure::golden_mean();
  const auto s = spectrum(build_matrix(TabulatedFunction::constant(gm, 0.0)));
  const auto Z = orbit_sums(Potential::constant(0.0), gm, 12);
  for (double x : {0.1, -0.2, 0.3}) {
    const auto p = spectral_product(s.nonzero, Z, x, 0);
    CHECK(std::abs(p.value - Scalar(1 - x - x * x)) < 1e-12);
  }
}

TEST_CASE("trace formula defects decay for the geometric family") {
  const auto full2 = TransitionStructure::full_shift(2);
  const std::vector<int> ms{2, 3, 4, 5, 6};
  const auto t = trace_formula_check(Potential::geometric(0.5), full2, 2, ms, MarkovMeasure::parry(full2));
  REQUIRE(t.rows.size() == 5);
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].defect < t.rows[i - 1].defect);
  REQUIRE(t.slope);
  CHECK(*t.slope < std::log(0.5));
}

TEST_CASE("log slope") {
  const std::vector<int> x{1, 2, 3, 4};
  const std::vector<double> y{1, std::exp(-1.0), std::exp(-2.0), std::exp(-3.0)};
  CHECK(*log_slope(x, y) == doctest::Approx(-1.0));
}

TEST_CASE("remainder estimates") {
  std::vector<Scalar> lambda{2.0, 0.5};
  CHECK(series_remainder(lambda, 0.1, 12) > 0.0);
  CHECK(series_remainder(lambda, 0.1, 12) < 1e-12);
  CHECK(perturbation_log_bound(TransitionStructure::full_shift(2), 0.1, 1.0, 0.0) == 0.0);
}
