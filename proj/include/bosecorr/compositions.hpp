#pragma once

// Bounded compositions and the monomial bookkeeping behind log-concavity
// of Z_N.
//
// a(p|m) counts vectors q with 0 <= q_i <= p_i and sum q_i = m, i.e. the
// coefficient of y^m in prod_i (1 + y + ... + y^{p_i}). It is symmetric
// about |p|/2 and nondecreasing below it, and it is exactly the
// coefficient with which the orbit of p enters Z_m Z_{N-m}.

#include <cstddef>
#include <string>
#include <vector>

#include "bosecorr/numerics.hpp"
#include "bosecorr/partition.hpp"
#include "bosecorr/spectrum.hpp"

namespace bosecorr {

/// Positive caps kept sorted ascending.
class CapVector {
 public:
  explicit CapVector(std::vector<long> caps);

  /// "2+3+7"; order in the text is irrelevant.
  static CapVector parse(std::string_view text);

  const std::vector<long>& caps() const { return caps_; }
  std::size_t size() const { return caps_.size(); }
  long operator[](std::size_t k) const { return caps_[k]; }
  long total() const { return total_; }
  /// Caps 1..l-1, i.e. the last (largest) one dropped.
  CapVector without_last() const;

  std::string to_string() const;

  friend bool operator==(const CapVector& a, const CapVector& b) { return a.caps_ == b.caps_; }
  friend auto operator<=>(const CapVector& a, const CapVector& b) { return a.caps_ <=> b.caps_; }

 private:
  std::vector<long> caps_;
  long total_ = 0;
};

/// All partitions of n with ascending parts, in lexicographic order.
std::vector<CapVector> enumerate_partitions(long n);

/// a(p|m) by dynamic programming with prefix sums; zero outside [0, |p|].
BigInt count_bounded(const CapVector& p, long m);

/// a(p|0..|p|) in one pass.
std::vector<BigInt> count_bounded_row(const CapVector& p);

/// a(p|m) by the explicit nested sum: q_j runs from
/// max{0, m - sum_{i<j} q_i - sum_{i>j} p_i} to min{p_j, m - sum_{i<j} q_i}
/// for j = 1..l-1, each admissible prefix contributing one.
BigInt count_bounded_nested(const CapVector& p, long m);

/// Shortcut valid when m <= p_i (1-based position in the sorted caps):
/// sum over q_1..q_{i-1} of C(m - sum q + l - i, l - i).
/// Throws "caps-bind" when m > p_i.
BigInt count_bounded_binomial(const CapVector& p, long m, std::size_t i);

/// |C(p|m)| by walking the whole box Q(p). Small instances only.
BigInt count_bounded_enumerated(const CapVector& p, long m);

/// |PC(p|m)|: points of Q(p_1..p_{l-1}) with m - p_l <= sum <= m.
BigInt count_projection(const CapVector& p, long m);

struct OrbitLimits {
  std::size_t max_levels = 8;
  long max_n = 12;
};

/// Sum of prod_j x_j^{n_j} over occupation vectors whose nonzero entries,
/// sorted ascending, equal p. Zero when p has more parts than levels.
template <ScalarBackend T>
T orbit_sum(const WeightVector<T>& w, const CapVector& p, const OrbitLimits& limits = {}) {
  if (w.size() > limits.max_levels || p.total() > limits.max_n) {
    throw Error("instance-too-large", "orbit enumeration capped at L<=" + std::to_string(limits.max_levels) +
                                          ", N<=" + std::to_string(limits.max_n));
  }
  if (p.size() > w.size()) return zero<T>();

  // distinct part values with multiplicities
  std::vector<long> values;
  std::vector<int> counts;
  for (long part : p.caps()) {
    if (values.empty() || values.back() != part) {
      values.push_back(part);
      counts.push_back(0);
    }
    ++counts.back();
  }

  std::vector<T> terms;
  int left = static_cast<int>(p.size());
  auto place = [&](auto&& self, std::size_t level, const T& product) -> void {
    if (left == 0) {
      terms.push_back(product);
      return;
    }
    if (w.size() - level < static_cast<std::size_t>(left)) return;
    self(self, level + 1, product);  // level stays empty
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (counts[v] == 0) continue;
      --counts[v];
      --left;
      self(self, level + 1, product * pow(w[level], values[v]));
      ++counts[v];
      ++left;
    }
  };
  place(place, 0, one<T>());
  return sum<T>(terms);
}

struct ProductDecompositionReport {
  bool holds = false;
  Rational lhs;  // Z_m Z_{N-m}
  Rational rhs;  // sum_{p |- N} a(p|m) orbit_sum(p)
};

/// Exact check that Z_m Z_{N-m} = sum over partitions p of N of
/// a(p|m) times the orbit sum of p.
ProductDecompositionReport product_decomposition_check(const WeightVector<Rational>& w, long n, long m,
                                                       const OrbitLimits& limits = {});

}  // namespace bosecorr
