#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ruelle/errors.hpp"
#include "ruelle/shift.hpp"
#include "support.hpp"

using namespace ruelle;

TEST_CASE("aperiodicity") {
  CHECK(check_aperiodic(full(2)) == 1);
  CHECK(check_aperiodic(golden()) == 2);
  Eigen::MatrixXi perm(2, 2);
  perm << 0, 1, 1, 0;
  CHECK_THROWS_AS(TransitionStructure{perm}, NotAperiodic);
  Eigen::MatrixXi reducible(2, 2);
  reducible << 1, 1, 0, 1;
  CHECK_THROWS_AS(TransitionStructure{reducible}, NotAperiodic);
  Eigen::MatrixXi bad(2, 2);
  bad << 1, 2, 1, 1;
  CHECK_THROWS(TransitionStructure{bad});
}

TEST_CASE("word and periodic counts agree with matrix powers") {
  for (const auto& a : test_matrices()) {
    TransitionStructure s(a);
    for (int m = 1; m <= 8; ++m) {
      CHECK(count_words(s, m) == static_cast<std::uint64_t>(oracle::word_count(a, m)));
      CHECK(count_periodic_points(s, m) == static_cast<std::uint64_t>(oracle::trace_power(a, m)));
    }
    const auto brute = oracle::words(a, 4);
    const WordList list = enumerate_words(s, 4);
    REQUIRE(list.size() == brute.size());
    for (std::size_t i = 0; i < list.size(); ++i) CHECK(list.word(i) == brute[i]);
  }
}

TEST_CASE("golden mean words") {
  const auto s = TransitionStructure::golden_mean();
  CHECK(count_words(s, 3) == 5);
  CHECK(count_periodic_points(s, 5) == 11);
  const WordList w = enumerate_words(s, 2);
  CHECK(w.size() == 3);
  CHECK(w.find(Word{1, 1}) < 0);
  CHECK(w.find(Word{1, 0}) == 2);
}

TEST_CASE("canonical tails and completion") {
  const auto s = TransitionStructure::golden_mean();
  CHECK(canonical_tail(s, 0).cycle == Word{0});
  CHECK(canonical_tail(s, 1).cycle == Word{1, 0});
  const Point p = completion(s, Word{0, 1});
  CHECK(p.prefix == Word{0});
  CHECK(p.cycle == Word{1, 0});
  CHECK(admissible(s, p));
  CHECK(p.at(4) == 0);
  CHECK(p.shifted(1).at(0) == 1);
}

TEST_CASE("metric") {
  const Point x = periodic(Word{0});
  Point y{{0, 0, 1}, {0}};
  CHECK(metric_distance(x, y, 0.5) == doctest::Approx(0.25));
  CHECK(metric_distance(x, x, 0.5) == 0.0);
}

TEST_CASE("perron data and parry measure") {
  const auto s = TransitionStructure::golden_mean();
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(perron(s).root == doctest::Approx(phi).epsilon(1e-13));
  CHECK(topological_entropy(TransitionStructure::full_shift(2)) == doctest::Approx(std::log(2.0)));
  const auto mu = MarkovMeasure::parry(s);
  CHECK(mu.stationary().sum() == doctest::Approx(1.0));
  CHECK(mu.stochastic().rowwise().sum().isOnes(1e-12));
  double total = 0;
  const WordList w = enumerate_words(s, 5);
  for (std::size_t i = 0; i < w.size(); ++i) total += mu.cylinder_mass(w[i]);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu.cylinder_mass(Word{1, 1}) == 0.0);
}

TEST_CASE("branching symbol") {
  const auto b = branching_symbol(TransitionStructure::golden_mean());
  CHECK(b.column == 0);
  CHECK(b.first_source == 0);
  CHECK(b.second_source == 1);
}

TEST_CASE("word text round trip") {
  CHECK(format_word(Word{0, 1, 0}, 2) == "121");
  CHECK(parse_word("121", 2) == Word{0, 1, 0});
  CHECK(format_word(Word{9, 10}, 12) == "10.11");
  CHECK(parse_word("10.11", 12) == Word{9, 10});
  CHECK_THROWS_AS(parse_word("3", 2), std::invalid_argument);
}
