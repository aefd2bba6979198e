#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bosecorr/partition.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bosecorr;
using test::q;
using test::weights;

namespace {

std::vector<Rational> rationals(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(q(t));
  return out;
}

}  // namespace

TEST_CASE("two-level fixture") {
  const auto w = weights({"1/2", "1/4"});
  const auto expected = rationals({"1", "3/4", "7/16", "15/64"});
  CHECK(z_powersum(w, 3).values() == expected);
  CHECK(z_bruteforce(w, 3).values() == expected);
  for (long n = 0; n <= 3; ++n) CHECK(oracle::partition(w.values(), n) == expected[static_cast<std::size_t>(n)]);
}

TEST_CASE("single level and equal weights") {
  const Rational x = q("3/7");
  const auto table = z_powersum(weights({"3/7"}), 9);
  for (long n = 0; n <= 9; ++n) CHECK(table.at(n) == pow(x, n));
  CHECK(z_powersum(weights({"3/7", "3/7"}), 2).at(2) == 3 * x * x);
  CHECK(table.at(-1) == 0);
  CHECK(table.nmax() == 9);
}

TEST_CASE("power-sum and enumeration agree with the oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t levels = 1 + static_cast<std::size_t>(trial % 5);
    const auto w = weights(oracle::random_weights(rng, levels));
    const auto fast = z_powersum(w, 8);
    const auto slow = z_bruteforce(w, 8);
    CHECK(fast.values() == slow.values());
    CHECK(fast.at(6) == oracle::partition(w.values(), 6));
  }
}

TEST_CASE("removed-level tables") {
  const auto w = weights({"1/2", "1/4"});
  CHECK(z_removed_table(w, {1}, 2).values() == rationals({"1", "1/2", "1/4"}));
  CHECK(z_removed_table(w, {0, 1}, 2).values() == rationals({"1", "0", "0"}));
  const auto w3 = weights({"1/2", "1/4", "1/8"});
  CHECK(z_removed_table(w3, {2}, 6).values() == z_powersum(weights({"1/2", "1/4"}), 6).values());
  CHECK(z_removed_table(w3, {2, 0}, 4).removed() == std::vector<std::size_t>{0, 2});
  CHECK_ERROR_CODE(z_removed_table(w3, {3}, 4), "index-out-of-range");
}

TEST_CASE("single-level decomposition") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = weights(oracle::random_weights(rng, 1 + static_cast<std::size_t>(trial % 4)));
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (long n = 0; n <= 6; ++n) {
        const auto report = decomposition_check(w, i, n);
        CHECK(report.holds);
        CHECK(report.peel_holds);
        CHECK(report.lhs == report.rhs);
      }
    }
  }
}

TEST_CASE("log-concavity of the sequence") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = weights(oracle::random_weights(rng, 2 + static_cast<std::size_t>(trial % 4)));
    const auto z = z_powersum(w, 12);
    for (long n = 1; n < 12; ++n) CHECK(z.at(n - 1) * z.at(n + 1) < z.at(n) * z.at(n));
  }
}

TEST_CASE("LogFloat backend tracks the exact one") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = weights(oracle::random_weights(rng, 2 + static_cast<std::size_t>(trial % 6)));
    const auto exact = z_powersum(w, 30);
    const auto approx = z_powersum(test::to_logfloat(w), 30);
    for (long n = 0; n <= 30; ++n) {
      const double reference = log_abs(exact.at(n));
      CHECK(std::fabs(approx.at(n).log() - reference) <= 1e-10 * std::max(1.0, std::fabs(reference)));
    }
    CHECK(z_bruteforce(test::to_logfloat(w), 5).at(5).log() == doctest::Approx(log_abs(exact.at(5))));
  }
}

TEST_CASE("free energy") {
  const auto f = free_energy_sequence(z_powersum(weights({"1/2", "1/4"}), 2));
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(0.28768207245178));
  CHECK(f[2] == doctest::Approx(0.82667857318447));
  const auto empty = z_removed_table(weights({"1/2"}), {0}, 2);
  CHECK_ERROR_CODE(free_energy_sequence(empty), "zero-partition");
}

TEST_CASE("resource limits") {
  const auto w = weights({"1/2", "1/4"});
  CHECK_ERROR_CODE(z_powersum(w, -1), "negative-n");
  CHECK_ERROR_CODE(z_powersum(w, 65), "instance-too-large");
  Limits tight;
  tight.bruteforce_max_configurations = 10;
  CHECK_ERROR_CODE(z_bruteforce(weights({"1/2", "1/4", "1/8"}), 6, tight), "instance-too-large");
  std::vector<Rational> many(17, q("1/2"));
  CHECK_ERROR_CODE(z_powersum(weights(many), 3), "instance-too-large");
}
