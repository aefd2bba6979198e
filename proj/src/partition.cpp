#include "bosecorr/partition.hpp"

namespace bosecorr {

DecompositionReport decomposition_check(const WeightVector<Rational>& w, std::size_t i, long n,
                                        const Limits& limits) {
  detail::check_nmax(n);
  const auto full = z_powersum(w, n, limits);
  const auto without = z_removed_table(w, {i}, n, limits);
  const Rational& x = w[i];

  DecompositionReport report;
  report.lhs = full.at(n);
  Rational power = 1;
  for (long k = 0; k <= n; ++k) {
    report.rhs += power * without.at(n - k);
    power *= x;
  }
  report.holds = exact_compare(report.lhs, report.rhs) == 0;

  report.peel_lhs = without.at(n);
  report.peel_rhs = full.at(n) - x * full.at(n - 1);
  report.peel_holds = exact_compare(report.peel_lhs, report.peel_rhs) == 0;
  return report;
}

}  // namespace bosecorr
