#pragma once

// Canonical partition functions Z_0..Z_Nmax of a weight vector.
//
// Three routes: exhaustive enumeration of occupation vectors (the oracle),
// the power-sum recursion  N Z_N = sum_{k=1..N} B_k Z_{N-k},  B_k = sum_i x_i^k
// (production engine, all terms positive), and removed-level tables which
// rerun the recursion on the reduced weight set.

#include <cstddef>
#include <string>
#include <vector>

#include "bosecorr/numerics.hpp"
#include "bosecorr/spectrum.hpp"

namespace bosecorr {

/// Size caps for table construction. Exact-mode big integers grow
/// quadratically with N, hence the much smaller defaults there.
struct Limits {
  std::size_t exact_max_levels = 16;
  long exact_max_n = 64;
  std::size_t log_max_levels = 100000;
  long log_max_n = 10000;
  double bruteforce_max_configurations = 1e7;
};

template <ScalarBackend T>
void check_limits(std::size_t levels, long nmax, const Limits& limits) {
  const bool exact = mode_of<T>() == Mode::Exact;
  const std::size_t max_levels = exact ? limits.exact_max_levels : limits.log_max_levels;
  const long max_n = exact ? limits.exact_max_n : limits.log_max_n;
  if (levels > max_levels || nmax > max_n) {
    throw Error("instance-too-large", "L=" + std::to_string(levels) + ", Nmax=" + std::to_string(nmax) +
                                          " exceeds the " + std::string(to_string(mode_of<T>())) +
                                          " caps L<=" + std::to_string(max_levels) +
                                          ", Nmax<=" + std::to_string(max_n));
  }
}

template <ScalarBackend T>
class PartitionTable {
 public:
  PartitionTable(WeightVector<T> weights, std::vector<std::size_t> removed, std::vector<T> values)
      : weights_(std::move(weights)), removed_(std::move(removed)), values_(std::move(values)) {}

  /// The generating system, before any removal.
  const WeightVector<T>& weights() const { return weights_; }
  const std::vector<std::size_t>& removed() const { return removed_; }
  const std::vector<T>& values() const { return values_; }
  const T& operator[](std::size_t n) const { return values_[n]; }
  /// Z_n, zero for n < 0.
  T at(long n) const { return n < 0 ? zero<T>() : values_.at(static_cast<std::size_t>(n)); }
  long nmax() const { return static_cast<long>(values_.size()) - 1; }
  static constexpr Mode mode() { return mode_of<T>(); }

 private:
  WeightVector<T> weights_;
  std::vector<std::size_t> removed_;
  std::vector<T> values_;
};

namespace detail {

inline void check_nmax(long nmax) {
  if (nmax < 0) throw Error("negative-n", "Nmax must be >= 0");
}

/// Power-sum recursion on a (possibly empty) weight list.
template <ScalarBackend T>
std::vector<T> powersum_values(const std::vector<T>& x, long nmax) {
  const auto n_count = static_cast<std::size_t>(nmax) + 1;
  std::vector<T> z(n_count, zero<T>());
  z[0] = one<T>();
  if (x.empty() || nmax == 0) return z;

  if constexpr (std::is_same_v<T, Rational>) {
    std::vector<Rational> power_sums(n_count, Rational(0));
    std::vector<Rational> pw = x;
    for (std::size_t k = 1; k < n_count; ++k) {
      Rational b = 0;
      for (std::size_t i = 0; i < pw.size(); ++i) {
        b += pw[i];
        pw[i] *= x[i];
      }
      power_sums[k] = b;
    }
    for (std::size_t n = 1; n < n_count; ++n) {
      Rational acc = 0;
      for (std::size_t k = 1; k <= n; ++k) acc += power_sums[k] * z[n - k];
      acc /= static_cast<unsigned long>(n);
      z[n] = acc;
    }
  } else {
    std::vector<double> log_x(x.size());
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      log_x[i] = x[i].log();
      max_log = std::max(max_log, log_x[i]);
    }
    std::vector<double> log_b(n_count, 0.0);
    for (std::size_t k = 1; k < n_count; ++k) {
      const double kd = static_cast<double>(k);
      double acc = 0.0;
      for (double lx : log_x) acc += std::exp(kd * (lx - max_log));
      log_b[k] = kd * max_log + std::log(acc);
    }
    std::vector<double> log_z(n_count, 0.0);
    std::vector<double> terms;
    terms.reserve(n_count);
    for (std::size_t n = 1; n < n_count; ++n) {
      terms.clear();
      for (std::size_t k = 1; k <= n; ++k) terms.push_back(log_b[k] + log_z[n - k]);
      log_z[n] = log_sum_exp(std::span<const double>(terms)) - std::log(static_cast<double>(n));
      z[n] = LogFloat::from_log(log_z[n]);
    }
  }
  return z;
}

}  // namespace detail

/// Z_0..Z_Nmax by exhaustive enumeration of occupation vectors, one weak
/// composition at a time in colexicographic order. Oracle for the other
/// engines; throws "instance-too-large" past the configuration cap.
template <ScalarBackend T>
PartitionTable<T> z_bruteforce(const WeightVector<T>& w, long nmax, const Limits& limits = {}) {
  detail::check_nmax(nmax);
  const std::size_t levels = w.size();
  if (levels > 0) {
    BigInt count;
    mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(nmax) + levels - 1, levels - 1);
    if (count.get_d() > limits.bruteforce_max_configurations) {
      throw Error("instance-too-large", "brute force would enumerate " + count.get_str() +
                                            " configurations at N=" + std::to_string(nmax));
    }
  }

  // powers[j][k] = x_j^k
  std::vector<std::vector<T>> powers(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    powers[j].reserve(static_cast<std::size_t>(nmax) + 1);
    powers[j].push_back(one<T>());
    for (long k = 1; k <= nmax; ++k) powers[j].push_back(powers[j].back() * w[j]);
  }

  std::vector<T> values(static_cast<std::size_t>(nmax) + 1, zero<T>());
  values[0] = one<T>();
  if (levels == 0) return PartitionTable<T>(w, {}, std::move(values));

  std::vector<long> occ(levels, 0);
  std::vector<T> terms;
  for (long n = 1; n <= nmax; ++n) {
    std::fill(occ.begin(), occ.end(), 0);
    occ[0] = n;
    terms.clear();
    while (true) {
      T term = powers[0][static_cast<std::size_t>(occ[0])];
      for (std::size_t j = 1; j < levels; ++j) term *= powers[j][static_cast<std::size_t>(occ[j])];
      terms.push_back(term);
      // odometer step: move one unit from the first occupied slot onward
      std::size_t k = 0;
      while (occ[k] == 0) ++k;
      if (k + 1 == levels) break;
      const long v = occ[k];
      occ[k] = 0;
      occ[0] = v - 1;
      occ[k + 1] += 1;
    }
    values[static_cast<std::size_t>(n)] = sum<T>(terms);
  }
  return PartitionTable<T>(w, {}, std::move(values));
}

/// Z_0..Z_Nmax by the power-sum recursion; O(Nmax*L + Nmax^2).
template <ScalarBackend T>
PartitionTable<T> z_powersum(const WeightVector<T>& w, long nmax, const Limits& limits = {}) {
  detail::check_nmax(nmax);
  check_limits<T>(w.size(), nmax, limits);
  return PartitionTable<T>(w, {}, detail::powersum_values(w.values(), nmax));
}

/// Partition functions of the system with the given levels missing,
/// recomputed on the reduced weights (never by subtraction).
template <ScalarBackend T>
PartitionTable<T> z_removed_table(const WeightVector<T>& w, std::vector<std::size_t> removed, long nmax,
                                  const Limits& limits = {}) {
  detail::check_nmax(nmax);
  check_limits<T>(w.size(), nmax, limits);
  std::sort(removed.begin(), removed.end());
  const WeightVector<T> reduced = remove_levels(w, removed);
  return PartitionTable<T>(w, std::move(removed), detail::powersum_values(reduced.values(), nmax));
}

struct DecompositionReport {
  bool holds = false;       // Z_N == sum_k x_i^k Z_{N-k,i}
  Rational lhs, rhs;
  bool peel_holds = false;  // Z_{N,i} == Z_N - x_i Z_{N-1}
  Rational peel_lhs, peel_rhs;
};

/// Exact check of the single-level decomposition of Z_N and of its peeled
/// form for level i.
DecompositionReport decomposition_check(const WeightVector<Rational>& w, std::size_t i, long n,
                                        const Limits& limits = {});

/// F_N = -ln Z_N in double precision; throws "zero-partition" on Z_N = 0.
template <ScalarBackend T>
std::vector<double> free_energy_sequence(const PartitionTable<T>& table) {
  std::vector<double> out;
  out.reserve(table.values().size());
  for (const auto& z : table.values()) {
    if (is_zero(z)) throw Error("zero-partition", "free energy of an empty ensemble");
    out.push_back(-log_of(z));
  }
  return out;
}

}  // namespace bosecorr
