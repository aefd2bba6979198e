#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bosecorr/compositions.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bosecorr;
using test::q;
using test::weights;

TEST_CASE("cap vectors") {
  const auto p = CapVector::parse("7+2+3");
  CHECK(p.caps() == std::vector<long>{2, 3, 7});
  CHECK(p.total() == 12);
  CHECK(p.to_string() == "2+3+7");
  CHECK(p.without_last() == CapVector({2, 3}));
  CHECK_ERROR_CODE(CapVector::parse("2,3"), "invalid-caps");
  CHECK_ERROR_CODE(CapVector::parse(""), "invalid-caps");
  CHECK_ERROR_CODE(CapVector::parse("2++3"), "invalid-caps");
  CHECK_ERROR_CODE(CapVector({0, 2}), "invalid-caps");
  CHECK_ERROR_CODE(CapVector({}), "invalid-caps");
}

TEST_CASE("partitions of n") {
  const auto four = enumerate_partitions(4);
  CHECK(four.size() == 5);
  for (const auto& expected : {CapVector({1, 1, 1, 1}), CapVector({1, 1, 2}), CapVector({2, 2}), CapVector({1, 3}),
                               CapVector({4})}) {
    CHECK(std::find(four.begin(), four.end(), expected) != four.end());
  }
  CHECK(std::is_sorted(four.begin(), four.end()));
  CHECK(enumerate_partitions(1) == std::vector<CapVector>{CapVector({1})});
  CHECK(enumerate_partitions(2) == std::vector<CapVector>{CapVector({1, 1}), CapVector({2})});
  CHECK(enumerate_partitions(14).size() == 135);
  CHECK_ERROR_CODE(enumerate_partitions(0), "invalid-n");
  CHECK_ERROR_CODE(enumerate_partitions(-1), "invalid-n");
}

TEST_CASE("bounded composition counts") {
  const CapVector p({2, 3});
  std::vector<BigInt> row;
  for (long m = 0; m <= 5; ++m) row.push_back(count_bounded(p, m));
  CHECK(row == std::vector<BigInt>{1, 2, 3, 3, 2, 1});
  CHECK(count_bounded_row(p) == row);
  CHECK(count_bounded(p, -1) == 0);
  CHECK(count_bounded(p, 6) == 0);
  CHECK(count_bounded(CapVector({5}), 3) == 1);
  CHECK(count_bounded(CapVector({1, 1, 1}), 2) == 3);
}

TEST_CASE("every formula agrees with the polynomial oracle") {
  for (long n = 1; n <= 10; ++n) {
    for (const auto& p : enumerate_partitions(n)) {
      const auto poly = oracle::cap_polynomial(p.caps());
      CHECK(count_bounded_row(p) == poly);
      for (long m = 0; m <= p.total(); ++m) {
        const auto a = poly[static_cast<std::size_t>(m)];
        CHECK(count_bounded_nested(p, m) == a);
        CHECK(count_bounded_enumerated(p, m) == a);
        CHECK(count_projection(p, m) == a);
        for (std::size_t i = 1; i <= p.size(); ++i) {
          if (m <= p[i - 1]) CHECK(count_bounded_binomial(p, m, i) == a);
        }
      }
    }
  }
}

TEST_CASE("nested sum and binomial shortcut examples") {
  CHECK(count_bounded_nested(CapVector({2, 3}), 2) == 3);
  CHECK(count_bounded_nested(CapVector({2, 3}), 5) == 1);
  CHECK(count_bounded_nested(CapVector({4}), 2) == 1);
  CHECK(count_bounded_binomial(CapVector({3, 3}), 2, 1) == 3);
  CHECK(count_bounded_binomial(CapVector({2, 5, 7}), 2, 1) == 6);
  CHECK_ERROR_CODE(count_bounded_binomial(CapVector({2, 3}), 3, 1), "caps-bind");
  CHECK_ERROR_CODE(count_bounded_binomial(CapVector({2, 3}), 1, 3), "index-out-of-range");
}

TEST_CASE("orbit sums") {
  const auto w = weights({"1/2", "1/4"});
  CHECK(orbit_sum(w, CapVector({2})) == q("5/16"));
  CHECK(orbit_sum(w, CapVector({1, 1})) == q("1/8"));
  CHECK(orbit_sum(w, CapVector({1, 1, 1})) == 0);

  // orbit sums over all partitions of N reassemble Z_N
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = weights(oracle::random_weights(rng, 1 + static_cast<std::size_t>(trial % 4)));
    for (long n = 1; n <= 7; ++n) {
      Rational total = 0;
      for (const auto& p : enumerate_partitions(n)) total += orbit_sum(v, p);
      CHECK(total == oracle::partition(v.values(), n));
    }
  }
  CHECK_ERROR_CODE(orbit_sum(w, CapVector({13})), "instance-too-large");
}

TEST_CASE("product decomposition") {
  const auto w = weights({"1/2", "1/4"});
  const auto r = product_decomposition_check(w, 3, 1);
  CHECK(r.holds);
  CHECK(r.lhs == q("3/4") * q("7/16"));
  CHECK(product_decomposition_check(w, 0, 0).rhs == 1);
  CHECK_ERROR_CODE(product_decomposition_check(w, 3, 4), "invalid-m");

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 8; ++trial) {
    const auto v = weights(oracle::random_weights(rng, 1 + static_cast<std::size_t>(trial % 4)));
    for (long n = 0; n <= 6; ++n) {
      for (long m = 0; m <= n; ++m) CHECK(product_decomposition_check(v, n, m).holds);
    }
  }
}
