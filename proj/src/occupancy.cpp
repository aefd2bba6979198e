#include "bosecorr/occupancy.hpp"

namespace bosecorr {

MeanIncrement mean_increment_decomposition(const WeightVector<Rational>& w, long n, std::size_t i,
                                           const Limits& limits) {
  detail::check_n(n);
  detail::check_index(w, i);
  const auto full = z_powersum(w, n + 1, limits);
  const auto without = z_removed_table(w, {i}, n + 1, limits);
  auto z = [&](long k) { return without.at(k); };

  std::vector<Rational> power(static_cast<std::size_t>(2 * n + 2), Rational(1));
  for (std::size_t k = 1; k < power.size(); ++k) power[k] = power[k - 1] * w[i];

  MeanIncrement out;
  out.normalizer = full.at(n) * full.at(n + 1);
  for (long k = 1; k <= n; ++k) {
    for (long m = k + 1; m <= n; ++m) {
      const Rational bracket = z(n - k) * z(n + 1 - m) - z(n - m) * z(n + 1 - k);
      if (sgn(bracket) < 0) out.brackets_nonnegative = false;
      out.pair_terms += power[static_cast<std::size_t>(k + m)] * (m - k) * bracket;
    }
  }
  for (long m = 1; m <= n; ++m) {
    const Rational bracket = z(n) * z(n + 1 - m) - z(n - m) * z(n + 1);
    if (sgn(bracket) < 0) out.brackets_nonnegative = false;
    out.single_terms += power[static_cast<std::size_t>(m)] * m * bracket;
  }
  out.boundary = (n + 1) * power[static_cast<std::size_t>(n + 1)] * z(n);
  for (long m = 1; m <= n; ++m) {
    out.boundary += (n + 1 - m) * power[static_cast<std::size_t>(m + n + 1)] * z(n - m);
  }
  return out;
}

}  // namespace bosecorr
