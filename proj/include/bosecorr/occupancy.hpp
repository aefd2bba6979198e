#pragma once

// Occupation-number statistics in the N-particle canonical ensemble.
//
// Everything is assembled from partition tables of the full system and of
// systems with one or two levels removed:
//   p_m(x_j)          = x_j^m Z_{N-m,j} / Z_N             (level marginal)
//   <N_i>_N           = sum_m m p_m(x_i)
//   <N_i>_{n,j}       = mean of N_i with level j missing
//   <N_i N_j>_N       = sum_m m p_m(x_j) <N_i>_{N-m,j}     (i != j)
// Signed quantities (covariances, derivatives) come back as
// SignedScalar<T>: exact rationals, or doubles for the LogFloat backend.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "bosecorr/numerics.hpp"
#include "bosecorr/partition.hpp"
#include "bosecorr/spectrum.hpp"

namespace bosecorr {

template <ScalarBackend T>
struct LevelMarginal {
  std::size_t level = 0;
  long n = 0;
  std::vector<T> probs;  // p_0..p_N
};

template <ScalarBackend T>
struct OccupancyStats {
  long n = 0;
  std::vector<T> means;
  std::vector<std::vector<T>> moments;  // <N_i N_j>, diagonal holds <N_i^2>
  std::vector<std::vector<SignedScalar<T>>> cov;
};

template <ScalarBackend T>
struct PlusMean {
  T mean;
  std::vector<T> mixture;  // p_m^+(x) = x^m Z_{N-m} / Z_N^+, m = 0..N
};

namespace detail {

inline void check_n(long n) {
  if (n < 0) throw Error("negative-n", "particle number must be >= 0");
}

template <ScalarBackend T>
void check_index(const WeightVector<T>& w, std::size_t i) {
  if (i >= w.size()) {
    throw Error("index-out-of-range",
                "level " + std::to_string(i) + " of a " + std::to_string(w.size()) + "-level system");
  }
}

/// p_m = x^m without[n-m] / full[n], m = 0..n.
template <ScalarBackend T>
std::vector<T> marginal_from_tables(const PartitionTable<T>& full, const PartitionTable<T>& without,
                                    const T& x, long n) {
  std::vector<T> probs;
  probs.reserve(static_cast<std::size_t>(n) + 1);
  const T& z = full.at(n);
  T power = one<T>();
  for (long m = 0; m <= n; ++m) {
    probs.push_back(power * without.at(n - m) / z);
    power *= x;
  }
  return probs;
}

/// (1/full[n]) sum_{m=1..n} m x^m without[n-m]; zero for n = 0.
template <ScalarBackend T>
T mean_from_tables(const PartitionTable<T>& full, const PartitionTable<T>& without, const T& x, long n) {
  if (n == 0) return zero<T>();
  std::vector<T> terms;
  terms.reserve(static_cast<std::size_t>(n));
  T power = one<T>();
  for (long m = 1; m <= n; ++m) {
    power *= x;
    terms.push_back(from_int<T>(m) * power * without.at(n - m));
  }
  return sum<T>(terms) / full.at(n);
}

template <ScalarBackend T>
T weighted_moment(const std::vector<T>& probs, int order) {
  std::vector<T> terms;
  terms.reserve(probs.size());
  for (std::size_t m = 1; m < probs.size(); ++m) {
    const long mm = static_cast<long>(m);
    terms.push_back(from_int<T>(order == 1 ? mm : mm * mm) * probs[m]);
  }
  return sum<T>(terms);
}

/// sum_{m=1..n} m p_m(x_j) <N_i>_{n-m,j}
template <ScalarBackend T>
T pair_from_tables(const std::vector<T>& marginal_j, const PartitionTable<T>& without_j,
                   const PartitionTable<T>& without_ij, const T& x_i, long n) {
  std::vector<T> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (long m = 1; m <= n; ++m) {
    const T restricted = mean_from_tables(without_j, without_ij, x_i, n - m);
    terms.push_back(from_int<T>(m) * marginal_j[static_cast<std::size_t>(m)] * restricted);
  }
  return sum<T>(terms);
}

template <ScalarBackend T>
SignedScalar<T> covariance(const T& pair, const T& mean_i, const T& mean_j) {
  if constexpr (std::is_same_v<T, Rational>) {
    return pair - mean_i * mean_j;
  } else {
    return pair.value() - mean_i.value() * mean_j.value();
  }
}

}  // namespace detail

/// Distribution of N_j in the N-particle ensemble.
template <ScalarBackend T>
LevelMarginal<T> level_marginal(const WeightVector<T>& w, long n, std::size_t j, const Limits& limits = {}) {
  detail::check_n(n);
  detail::check_index(w, j);
  const auto full = z_powersum(w, n, limits);
  const auto without = z_removed_table(w, {j}, n, limits);
  return {j, n, detail::marginal_from_tables(full, without, w[j], n)};
}

/// <N_i>_N through the level marginal.
template <ScalarBackend T>
T mean_occupation(const WeightVector<T>& w, long n, std::size_t i, const Limits& limits = {}) {
  return detail::weighted_moment(level_marginal(w, n, i, limits).probs, 1);
}

/// <N_i^2>_N through the level marginal.
template <ScalarBackend T>
T second_moment(const WeightVector<T>& w, long n, std::size_t i, const Limits& limits = {}) {
  return detail::weighted_moment(level_marginal(w, n, i, limits).probs, 2);
}

/// <N_i>_{n,j}: mean of N_i in the n-particle system with level j missing.
template <ScalarBackend T>
T restricted_mean(const WeightVector<T>& w, long n, std::size_t i, std::size_t j, const Limits& limits = {}) {
  detail::check_n(n);
  detail::check_index(w, i);
  detail::check_index(w, j);
  if (i == j) throw Error("same-level", "restricted mean needs i != j");
  const auto without_j = z_removed_table(w, {j}, n, limits);
  const auto without_ij = z_removed_table(w, {i, j}, n, limits);
  return detail::mean_from_tables(without_j, without_ij, w[i], n);
}

/// <N_i N_j>_N for i != j, as the p_m(x_j)-weighted sum of restricted means.
template <ScalarBackend T>
T pair_moment(const WeightVector<T>& w, long n, std::size_t i, std::size_t j, const Limits& limits = {}) {
  detail::check_n(n);
  detail::check_index(w, i);
  detail::check_index(w, j);
  if (i == j) throw Error("same-level", "pair moment needs i != j; use second_moment");
  const auto full = z_powersum(w, n, limits);
  const auto without_j = z_removed_table(w, {j}, n, limits);
  const auto without_ij = z_removed_table(w, {i, j}, n, limits);
  const auto marginal = detail::marginal_from_tables(full, without_j, w[j], n);
  return detail::pair_from_tables(marginal, without_j, without_ij, w[i], n);
}

/// Means, moments and the full covariance matrix at particle number N.
template <ScalarBackend T>
OccupancyStats<T> covariance_matrix(const WeightVector<T>& w, long n, const Limits& limits = {}) {
  detail::check_n(n);
  const std::size_t levels = w.size();
  const auto full = z_powersum(w, n, limits);
  std::vector<PartitionTable<T>> without;
  without.reserve(levels);
  for (std::size_t j = 0; j < levels; ++j) without.push_back(z_removed_table(w, {j}, n, limits));

  OccupancyStats<T> stats;
  stats.n = n;
  std::vector<std::vector<T>> marginals;
  for (std::size_t j = 0; j < levels; ++j) {
    marginals.push_back(detail::marginal_from_tables(full, without[j], w[j], n));
    stats.means.push_back(detail::weighted_moment(marginals.back(), 1));
  }
  stats.moments.assign(levels, std::vector<T>(levels, zero<T>()));
  for (std::size_t i = 0; i < levels; ++i) {
    stats.moments[i][i] = detail::weighted_moment(marginals[i], 2);
    for (std::size_t j = i + 1; j < levels; ++j) {
      const auto without_ij = z_removed_table(w, {i, j}, n, limits);
      stats.moments[i][j] = detail::pair_from_tables(marginals[j], without[j], without_ij, w[i], n);
      stats.moments[j][i] = stats.moments[i][j];
    }
  }
  stats.cov.assign(levels, std::vector<SignedScalar<T>>(levels));
  for (std::size_t i = 0; i < levels; ++i) {
    for (std::size_t j = 0; j < levels; ++j) {
      stats.cov[i][j] = detail::covariance(stats.moments[i][j], stats.means[i], stats.means[j]);
    }
  }
  return stats;
}

/// d<N_0>_N / d tau with x_i = exp(-tau e_i), tau = beta * energy_scale(),
/// from -sum_{j>=1} (e_j - e_0) cov(N_0, N_j). Exact for the Rational
/// backend; zero when all energies coincide.
template <ScalarBackend T>
SignedScalar<T> beta_derivative_ground(const LevelSet& levels, long n, const Limits& limits = {}) {
  detail::check_n(n);
  const auto w = weights_from_spectrum<T>(levels);
  const auto energies = levels.expanded_energies();
  SignedScalar<T> result{0};
  if (w.size() < 2 || n == 0) return result;

  const auto full = z_powersum(w, n, limits);
  const auto without_0 = z_removed_table(w, {0}, n, limits);
  const T mean_0 = detail::mean_from_tables(full, without_0, w[0], n);
  for (std::size_t j = 1; j < w.size(); ++j) {
    if (energies[j] == energies[0]) continue;
    const auto without_j = z_removed_table(w, {j}, n, limits);
    const auto without_0j = z_removed_table(w, {0, j}, n, limits);
    const auto marginal_j = detail::marginal_from_tables(full, without_j, w[j], n);
    const T mean_j = detail::weighted_moment(marginal_j, 1);
    const T pair = detail::pair_from_tables(marginal_j, without_j, without_0j, w[0], n);
    const Rational gap = energies[j] - energies[0];
    if constexpr (std::is_same_v<T, Rational>) {
      result -= gap * detail::covariance(pair, mean_0, mean_j);
    } else {
      result -= gap.get_d() * detail::covariance(pair, mean_0, mean_j);
    }
  }
  return result;
}

/// Mean of level i after adding one level of weight x, assembled as the
/// mixture sum_m p_m^+(x) <N_i>_{N-m} over the occupation of the new level.
template <ScalarBackend T>
PlusMean<T> mean_occupation_plus(const WeightVector<T>& w, const T& x, long n, std::size_t i,
                                 const Limits& limits = {}) {
  detail::check_n(n);
  detail::check_index(w, i);
  const auto extended = add_level(w, x);
  const auto full = z_powersum(w, n, limits);
  const auto without_i = z_removed_table(w, {i}, n, limits);
  const auto full_plus = z_powersum(extended, n, limits);

  PlusMean<T> out;
  std::vector<T> terms;
  T power = one<T>();
  for (long m = 0; m <= n; ++m) {
    out.mixture.push_back(power * full.at(n - m) / full_plus.at(n));
    terms.push_back(out.mixture.back() * detail::mean_from_tables(full, without_i, w[i], n - m));
    power *= x;
  }
  out.mean = sum<T>(terms);
  return out;
}

/// The three pieces of Z_N Z_{N+1} (<N_i>_{N+1} - <N_i>_N) after the
/// rearrangement that exposes their signs:
///   pair_terms   = sum_{1<=k<m<=N} x^{k+m} (m-k) [Z_{N-k,i} Z_{N+1-m,i} - Z_{N-m,i} Z_{N+1-k,i}]
///   single_terms = sum_{m=1..N} m x^m [Z_{N,i} Z_{N+1-m,i} - Z_{N-m,i} Z_{N+1,i}]
///   boundary     = (N+1) x^{N+1} Z_{N,i} + sum_{m=1..N} (N+1-m) x^{m+N+1} Z_{N-m,i}
/// Every bracket is nonnegative by log-concavity of the removed-level table.
struct MeanIncrement {
  Rational pair_terms, single_terms, boundary;
  Rational normalizer;  // Z_N Z_{N+1}
  bool brackets_nonnegative = true;

  Rational increment() const { return (pair_terms + single_terms + boundary) / normalizer; }
};

MeanIncrement mean_increment_decomposition(const WeightVector<Rational>& w, long n, std::size_t i,
                                           const Limits& limits = {});

/// Generator and algorithm recorded alongside sampled output.
inline constexpr std::string_view kSamplerAlgorithm = "mt19937_64/inverse-cdf/sequential-marginal";

/// Exact sequential sampler: draws N_0 from its marginal, then N_1 from
/// the marginal of the system with level 0 removed and N - N_0 particles,
/// and so on. Owns its generator; deterministic per seed.
template <ScalarBackend T>
class ConfigurationSampler {
 public:
  ConfigurationSampler(const WeightVector<T>& w, long n, std::uint64_t seed, const Limits& limits = {})
      : weights_(w), n_(n), rng_(seed) {
    detail::check_n(n);
    suffix_tables_.reserve(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::vector<T> suffix(w.values().begin() + static_cast<std::ptrdiff_t>(k), w.values().end());
      suffix_tables_.push_back(z_powersum(WeightVector<T>(std::move(suffix)), n, limits));
    }
    cdfs_.resize(w.size());
  }

  std::vector<long> next() {
    const std::size_t levels = weights_.size();
    std::vector<long> occ(levels, 0);
    long remaining = n_;
    for (std::size_t k = 0; k + 1 < levels && remaining > 0; ++k) {
      const auto& cdf = cdf_for(k, remaining);
      const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const long m = std::min<long>(static_cast<long>(it - cdf.begin()), remaining);
      occ[k] = m;
      remaining -= m;
    }
    occ[levels - 1] += remaining;
    return occ;
  }

  /// CDF of N_k in the system of levels k..L-1 holding n particles.
  const std::vector<double>& cdf_for(std::size_t k, long n) {
    auto& rows = cdfs_[k];
    if (rows.size() <= static_cast<std::size_t>(n)) rows.resize(static_cast<std::size_t>(n) + 1);
    auto& row = rows[static_cast<std::size_t>(n)];
    if (row.empty()) {
      const auto probs =
          detail::marginal_from_tables(suffix_tables_[k], suffix_tables_[k + 1], weights_[k], n);
      double acc = 0.0;
      for (const auto& p : probs) {
        acc = std::min(1.0, acc + to_double(p));
        row.push_back(acc);
      }
      row.back() = 1.0;
    }
    return row;
  }

 private:
  WeightVector<T> weights_;
  long n_;
  std::mt19937_64 rng_;
  std::vector<PartitionTable<T>> suffix_tables_;
  std::vector<std::vector<std::vector<double>>> cdfs_;
};

template <ScalarBackend T>
std::vector<long> sample_configuration(const WeightVector<T>& w, long n, std::uint64_t seed,
                                       const Limits& limits = {}) {
  return ConfigurationSampler<T>(w, n, seed, limits).next();
}

template <ScalarBackend T>
struct CurvePoint {
  Rational beta;
  T fraction;  // <N_0>_N / N
};

/// Condensate fraction <N_0>_N / N along an ascending grid of inverse
/// temperatures, the level set serving as template for the energies.
template <ScalarBackend T>
std::vector<CurvePoint<T>> condensate_curve(const LevelSet& levels, long n, const std::vector<Rational>& beta_grid,
                                            const Limits& limits = {}) {
  if (beta_grid.empty()) throw Error("empty-grid", "condensate curve needs at least one beta");
  if (n < 1) throw Error("negative-n", "condensate fraction needs N >= 1");
  for (std::size_t k = 0; k < beta_grid.size(); ++k) {
    if (sgn(beta_grid[k]) <= 0) throw Error("nonpositive-beta", "beta grid must be positive");
    if (k > 0 && !(beta_grid[k - 1] < beta_grid[k])) {
      throw Error("invalid-grid", "beta grid must be strictly ascending");
    }
  }
  std::vector<CurvePoint<T>> out;
  out.reserve(beta_grid.size());
  for (const auto& beta : beta_grid) {
    const auto w = weights_from_spectrum<T>(levels.with_beta(beta));
    out.push_back({beta, mean_occupation(w, n, 0, limits) / from_int<T>(n)});
  }
  return out;
}

}  // namespace bosecorr
