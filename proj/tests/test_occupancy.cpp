#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bosecorr/occupancy.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bosecorr;
using test::q;
using test::weights;

TEST_CASE("level marginals of the two-level fixture") {
  const auto w = weights({"1/2", "1/4"});
  CHECK(level_marginal(w, 2, 1).probs == std::vector<Rational>{q("4/7"), q("2/7"), q("1/7")});
  CHECK(level_marginal(w, 2, 0).probs == std::vector<Rational>{q("1/7"), q("2/7"), q("4/7")});
  CHECK(level_marginal(w, 3, 0).probs == std::vector<Rational>{q("1/15"), q("2/15"), q("4/15"), q("8/15")});
  CHECK(level_marginal(w, 0, 0).probs == std::vector<Rational>{q("1")});
  CHECK_ERROR_CODE(level_marginal(w, 2, 2), "index-out-of-range");
  CHECK_ERROR_CODE(level_marginal(w, -1, 0), "negative-n");
}

TEST_CASE("means and moments of the fixture") {
  const auto w = weights({"1/2", "1/4"});
  CHECK(mean_occupation(w, 2, 0) == q("10/7"));
  CHECK(mean_occupation(w, 3, 0) == q("34/15"));
  CHECK(mean_occupation(weights({"2/3"}), 7, 0) == 7);
  CHECK(second_moment(w, 2, 0) == q("18/7"));
  CHECK(second_moment(weights({"2/3"}), 5, 0) == 25);
  CHECK(second_moment(w, 0, 1) == 0);
  CHECK(pair_moment(w, 2, 0, 1) == q("2/7"));
  CHECK(pair_moment(w, 3, 0, 1) == q("4/5"));
  CHECK(pair_moment(weights({"1/2", "1/4", "1/8"}), 1, 0, 2) == 0);
  CHECK_ERROR_CODE(pair_moment(w, 2, 1, 1), "same-level");
}

TEST_CASE("restricted means") {
  CHECK(restricted_mean(weights({"1/2", "1/4"}), 2, 0, 1) == 2);
  CHECK(restricted_mean(weights({"1/2", "1/4", "1/8"}), 1, 0, 2) == q("2/3"));
  CHECK(restricted_mean(weights({"1/2", "1/4", "1/8"}), 0, 0, 2) == 0);
  CHECK_ERROR_CODE(restricted_mean(weights({"1/2", "1/4"}), 2, 0, 0), "same-level");
}

TEST_CASE("covariance matrix of the fixture") {
  const auto w = weights({"1/2", "1/4"});
  const auto s2 = covariance_matrix(w, 2);
  CHECK(s2.means == std::vector<Rational>{q("10/7"), q("4/7")});
  CHECK(s2.cov[0][1] == q("-26/49"));
  CHECK(s2.cov[1][0] == q("-26/49"));
  CHECK(s2.cov[0][0] == q("26/49"));
  CHECK(covariance_matrix(w, 3).cov[0][1] == q("-194/225"));
  const auto single = covariance_matrix(weights({"1/3"}), 4);
  REQUIRE(single.cov.size() == 1);
  CHECK(single.cov[0][0] == 0);
}

TEST_CASE("occupancy statistics agree with enumeration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t levels = 1 + static_cast<std::size_t>(trial % 5);
    const long n = 1 + trial % 7;
    const auto w = weights(oracle::random_weights(rng, levels));
    const auto ref = oracle::moments(w.values(), n);
    const auto stats = covariance_matrix(w, n);
    for (std::size_t i = 0; i < levels; ++i) {
      CHECK(stats.means[i] == ref.mean[i]);
      CHECK(level_marginal(w, n, i).probs == ref.marginal[i]);
      for (std::size_t j = 0; j < levels; ++j) {
        CHECK(stats.moments[i][j] == ref.second[i][j]);
        CHECK(stats.cov[i][j] == ref.second[i][j] - ref.mean[i] * ref.mean[j]);
      }
    }
  }
}

TEST_CASE("LogFloat statistics track the exact ones") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = weights(oracle::random_weights(rng, 2 + static_cast<std::size_t>(trial % 4)));
    const auto exact = covariance_matrix(w, 6);
    const auto approx = covariance_matrix(test::to_logfloat(w), 6);
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(approx.means[i].value() == doctest::Approx(exact.means[i].get_d()).epsilon(1e-10));
      for (std::size_t j = 0; j < w.size(); ++j) {
        CHECK(approx.cov[i][j] == doctest::Approx(exact.cov[i][j].get_d()).epsilon(1e-7).scale(1e-9));
      }
    }
  }
}

TEST_CASE("ground-state derivative in beta") {
  const LevelSet two({q("0"), q("1")}, {1, 1}, q("1"), q("1/2"));
  CHECK(beta_derivative_ground<Rational>(two, 1) == q("2/9"));
  CHECK(beta_derivative_ground<Rational>(two, 2) == q("26/49"));
  CHECK(beta_derivative_ground<Rational>(LevelSet({q("0")}, {3}, q("1"), q("1/2")), 3) == 0);
  CHECK(beta_derivative_ground<Rational>(two, 0) == 0);

  // d/dbeta [1 / (1 + e^{-beta})] at beta = 0.7 for N = 1
  const LevelSet plain({q("0"), q("1")}, {1, 1}, q("7/10"));
  const double e = std::exp(-0.7);
  CHECK(beta_derivative_ground<LogFloat>(plain, 1) == doctest::Approx(e / ((1 + e) * (1 + e))).epsilon(1e-12));
}

TEST_CASE("mean after adding a level") {
  const auto w = weights({"1/2", "1/4"});
  const auto plus = mean_occupation_plus(w, q("1/2"), 2, 0);
  CHECK(plus.mean == q("14/17"));
  Rational total = 0;
  for (const auto& p : plus.mixture) total += p;
  CHECK(total == 1);
  CHECK(plus.mixture[0] == q("7/16") / q("17/16"));
  CHECK(plus.mean == mean_occupation(add_level(w, q("1/2")), 2, 0));

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = weights(oracle::random_weights(rng, 1 + static_cast<std::size_t>(trial % 4)));
    const auto x = oracle::random_rational(rng);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(mean_occupation_plus(v, x, 5, i).mean == mean_occupation(add_level(v, x), 5, i));
    }
  }
}

TEST_CASE("mean increment decomposition") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = weights(oracle::random_weights(rng, 2 + static_cast<std::size_t>(trial % 4)));
    for (long n = 0; n <= 6; ++n) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        const auto d = mean_increment_decomposition(w, n, i);
        CHECK(d.brackets_nonnegative);
        CHECK(d.increment() == mean_occupation(w, n + 1, i) - mean_occupation(w, n, i));
        CHECK(d.boundary > 0);
      }
    }
  }
}

TEST_CASE("sampler") {
  const auto w = weights({"1/2", "1/4"});
  SUBCASE("determinism") {
    ConfigurationSampler<Rational> a(w, 5, 99);
    ConfigurationSampler<Rational> b(w, 5, 99);
    for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
    CHECK(sample_configuration(w, 5, 7) == sample_configuration(w, 5, 7));
  }
  SUBCASE("every draw is a valid configuration") {
    const auto v = weights({"1/2", "1/3", "1/5", "1/7"});
    ConfigurationSampler<LogFloat> s(test::to_logfloat(v), 9, 3);
    for (int k = 0; k < 500; ++k) {
      const auto occ = s.next();
      long total = 0;
      for (long m : occ) {
        CHECK(m >= 0);
        total += m;
      }
      CHECK(total == 9);
    }
  }
  SUBCASE("degenerate cases") {
    CHECK(sample_configuration(w, 0, 1) == std::vector<long>{0, 0});
    CHECK(sample_configuration(weights({"1/3"}), 4, 1) == std::vector<long>{4});
  }
  SUBCASE("empirical mean") {
    ConfigurationSampler<Rational> s(w, 2, 2024);
    const int draws = 20000;
    double total = 0;
    for (int k = 0; k < draws; ++k) total += static_cast<double>(s.next()[0]);
    const double sigma = std::sqrt(26.0 / 49.0 / draws);
    CHECK(std::fabs(total / draws - 10.0 / 7.0) < 4 * sigma);
  }
  SUBCASE("first-level CDF") {
    ConfigurationSampler<Rational> s(w, 2, 1);
    const auto& cdf = s.cdf_for(0, 2);
    REQUIRE(cdf.size() == 3);
    CHECK(cdf[0] == doctest::Approx(1.0 / 7));
    CHECK(cdf[1] == doctest::Approx(3.0 / 7));
    CHECK(cdf[2] == 1.0);
  }
}

TEST_CASE("condensate curve") {
  const LevelSet two({q("0"), q("1")}, {1, 1}, q("1"), q("1/2"));
  const auto point = condensate_curve<Rational>(two, 2, {q("1")});
  REQUIRE(point.size() == 1);
  CHECK(point[0].fraction == q("5/7"));

  const LevelSet single({q("0")}, {1}, q("1"));
  for (const auto& p : condensate_curve<LogFloat>(single, 5, {q("1/10"), q("1"), q("10")})) {
    CHECK(p.fraction.value() == doctest::Approx(1.0));
  }

  const LevelSet ladder({q("0"), q("1"), q("2"), q("3")}, {1, 2, 3, 4}, q("1"));
  std::vector<Rational> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(Rational(k, 4));
  const auto curve = condensate_curve<LogFloat>(ladder, 20, grid);
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k - 1].fraction < curve[k].fraction);

  CHECK_ERROR_CODE(condensate_curve<LogFloat>(two, 2, {}), "empty-grid");
  CHECK_ERROR_CODE(condensate_curve<LogFloat>(two, 0, {q("1")}), "negative-n");
  CHECK_ERROR_CODE(condensate_curve<LogFloat>(two, 2, {q("2"), q("1")}), "invalid-grid");
  CHECK_ERROR_CODE(condensate_curve<LogFloat>(two, 2, {q("0")}), "nonpositive-beta");
}
