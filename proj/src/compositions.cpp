#include "bosecorr/compositions.hpp"

#include <algorithm>
#include <numeric>

namespace bosecorr {

CapVector::CapVector(std::vector<long> caps) : caps_(std::move(caps)) {
  if (caps_.empty()) throw Error("invalid-caps", "a cap vector needs at least one part");
  for (long c : caps_) {
    if (c < 1) throw Error("invalid-caps", "caps must be positive integers");
  }
  std::sort(caps_.begin(), caps_.end());
  total_ = std::accumulate(caps_.begin(), caps_.end(), 0L);
}

CapVector CapVector::parse(std::string_view text) {
  std::vector<long> caps;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto token = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string_view::npos || token.size() > 9) {
      throw Error("invalid-caps", "caps must look like \"2+3+7\", got \"" + std::string(text) + "\"");
    }
    caps.push_back(std::stol(std::string(token)));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return CapVector(std::move(caps));
}

CapVector CapVector::without_last() const {
  if (caps_.size() < 2) throw Error("invalid-caps", "cannot drop the only cap");
  return CapVector(std::vector<long>(caps_.begin(), caps_.end() - 1));
}

std::string CapVector::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < caps_.size(); ++k) {
    if (k > 0) out += '+';
    out += std::to_string(caps_[k]);
  }
  return out;
}

std::vector<CapVector> enumerate_partitions(long n) {
  if (n <= 0) throw Error("invalid-n", "partitions need n >= 1");
  std::vector<CapVector> out;
  std::vector<long> parts;
  auto extend = [&](auto&& self, long remaining, long smallest) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (long a = smallest; a <= remaining; ++a) {
      if (remaining - a != 0 && remaining - a < a) continue;
      parts.push_back(a);
      self(self, remaining - a, a);
      parts.pop_back();
    }
  };
  extend(extend, n, 1);
  return out;
}

std::vector<BigInt> count_bounded_row(const CapVector& p) {
  std::vector<BigInt> row{BigInt(1)};
  for (long cap : p.caps()) {
    const std::size_t width = row.size() + static_cast<std::size_t>(cap);
    std::vector<BigInt> prefix(row.size() + 1, BigInt(0));
    for (std::size_t t = 0; t < row.size(); ++t) prefix[t + 1] = prefix[t] + row[t];
    std::vector<BigInt> next(width);
    for (std::size_t s = 0; s < width; ++s) {
      // sum of row[t] for s - cap <= t <= s
      const std::size_t hi = std::min(s, row.size() - 1) + 1;
      const std::size_t lo = s >= static_cast<std::size_t>(cap) ? s - static_cast<std::size_t>(cap) : 0;
      next[s] = prefix[hi] - prefix[lo];
    }
    row = std::move(next);
  }
  return row;
}

BigInt count_bounded(const CapVector& p, long m) {
  if (m < 0 || m > p.total()) return 0;
  return count_bounded_row(p)[static_cast<std::size_t>(m)];
}

BigInt count_bounded_nested(const CapVector& p, long m) {
  if (m < 0 || m > p.total()) return 0;
  const std::size_t l = p.size();
  // tail[j] = sum of caps after position j (0-based)
  std::vector<long> tail(l, 0);
  for (std::size_t j = l - 1; j-- > 0;) tail[j] = tail[j + 1] + p[j + 1];

  BigInt count = 0;
  auto loop = [&](auto&& self, std::size_t j, long used) -> void {
    if (j + 1 == l) {
      ++count;
      return;
    }
    const long lower = std::max(0L, m - used - tail[j]);
    const long upper = std::min(p[j], m - used);
    for (long q = lower; q <= upper; ++q) self(self, j + 1, used + q);
  };
  loop(loop, 0, 0);
  return count;
}

BigInt count_bounded_binomial(const CapVector& p, long m, std::size_t i) {
  const std::size_t l = p.size();
  if (i < 1 || i > l) throw Error("index-out-of-range", "binomial shortcut position is 1-based in [1, l]");
  if (m > p[i - 1]) {
    throw Error("caps-bind", "m=" + std::to_string(m) + " exceeds p_" + std::to_string(i) + "=" +
                                 std::to_string(p[i - 1]));
  }
  if (m < 0) return 0;
  const unsigned long free_slots = static_cast<unsigned long>(l - i);

  BigInt count = 0;
  auto loop = [&](auto&& self, std::size_t j, long used) -> void {
    if (j + 1 == i) {
      BigInt c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m - used) + free_slots, free_slots);
      count += c;
      return;
    }
    const long upper = std::min(p[j], m - used);
    for (long q = 0; q <= upper; ++q) self(self, j + 1, used + q);
  };
  loop(loop, 0, 0);
  return count;
}

namespace {

/// Calls visit(sum) for every point of the box with the given caps.
template <class Visit>
void walk_box(const std::vector<long>& caps, Visit&& visit) {
  std::vector<long> q(caps.size(), 0);
  long total = 0;
  while (true) {
    visit(total);
    std::size_t k = 0;
    while (k < q.size() && q[k] == caps[k]) {
      total -= q[k];
      q[k] = 0;
      ++k;
    }
    if (k == q.size()) return;
    ++q[k];
    ++total;
  }
}

}  // namespace

BigInt count_bounded_enumerated(const CapVector& p, long m) {
  BigInt count = 0;
  walk_box(p.caps(), [&](long s) {
    if (s == m) ++count;
  });
  return count;
}

BigInt count_projection(const CapVector& p, long m) {
  const std::vector<long> head(p.caps().begin(), p.caps().end() - 1);
  const long last = p.caps().back();
  BigInt count = 0;
  walk_box(head, [&](long s) {
    if (m - last <= s && s <= m) ++count;
  });
  return count;
}

ProductDecompositionReport product_decomposition_check(const WeightVector<Rational>& w, long n, long m,
                                                       const OrbitLimits& limits) {
  if (m < 0 || m > n) throw Error("invalid-m", "need 0 <= m <= N");
  ProductDecompositionReport report;
  const auto table = z_powersum(w, n);
  report.lhs = table.at(m) * table.at(n - m);
  if (n == 0) {
    report.rhs = 1;
  } else {
    for (const auto& p : enumerate_partitions(n)) {
      const BigInt a = count_bounded(p, m);
      if (sgn(a) == 0) continue;
      report.rhs += Rational(a) * orbit_sum(w, p, limits);
    }
  }
  report.holds = exact_compare(report.lhs, report.rhs) == 0;
  return report;
}

}  // namespace bosecorr
