#pragma once

// Reference implementations for the tests. They enumerate occupation
// vectors and multiply polynomials directly and share no code with the
// library beyond the Rational type.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

inline Q power(const Q& x, long k) {
  Q r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

/// Calls f(occupations) for every vector of L nonnegative integers summing to n.
inline void for_each_configuration(std::size_t levels, long n, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> occ(levels, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t k, long left) {
    if (k + 1 == levels) {
      occ[k] = left;
      f(occ);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      occ[k] = v;
      rec(k + 1, left - v);
    }
  };
  if (levels == 0) {
    if (n == 0) f(occ);
    return;
  }
  rec(0, n);
}

inline Q boltzmann(const std::vector<Q>& w, const std::vector<long>& occ) {
  Q p = 1;
  for (std::size_t k = 0; k < w.size(); ++k) p *= power(w[k], occ[k]);
  return p;
}

inline Q partition(const std::vector<Q>& w, long n) {
  Q z = 0;
  for_each_configuration(w.size(), n, [&](const std::vector<long>& occ) { z += boltzmann(w, occ); });
  return z;
}

struct Moments {
  Q z;
  std::vector<Q> mean;
  std::vector<std::vector<Q>> second;  // <N_i N_j>
  std::vector<std::vector<Q>> marginal;  // marginal[i][m] = P(N_i = m)
};

inline Moments moments(const std::vector<Q>& w, long n) {
  const std::size_t levels = w.size();
  Moments out;
  out.z = 0;
  out.mean.assign(levels, 0);
  out.second.assign(levels, std::vector<Q>(levels, 0));
  out.marginal.assign(levels, std::vector<Q>(static_cast<std::size_t>(n) + 1, 0));
  for_each_configuration(levels, n, [&](const std::vector<long>& occ) {
    const Q p = boltzmann(w, occ);
    out.z += p;
    for (std::size_t i = 0; i < levels; ++i) {
      out.mean[i] += occ[i] * p;
      out.marginal[i][static_cast<std::size_t>(occ[i])] += p;
      for (std::size_t j = 0; j < levels; ++j) out.second[i][j] += occ[i] * occ[j] * p;
    }
  });
  for (std::size_t i = 0; i < levels; ++i) {
    out.mean[i] /= out.z;
    for (auto& v : out.marginal[i]) v /= out.z;
    for (auto& v : out.second[i]) v /= out.z;
  }
  return out;
}

/// Coefficients of prod_i (1 + y + ... + y^{caps_i}).
inline std::vector<Z> cap_polynomial(const std::vector<long>& caps) {
  std::vector<Z> poly{1};
  for (long c : caps) {
    std::vector<Z> next(poly.size() + static_cast<std::size_t>(c), 0);
    for (std::size_t a = 0; a < poly.size(); ++a) {
      for (long b = 0; b <= c; ++b) next[a + static_cast<std::size_t>(b)] += poly[a];
    }
    poly = std::move(next);
  }
  return poly;
}

/// Random rational with numerator and denominator uniform in [1, max].
inline Q random_rational(std::mt19937_64& rng, long max = 1L << 16) {
  std::uniform_int_distribution<long> dist(1, max);
  Q q(dist(rng), dist(rng));
  q.canonicalize();
  return q;
}

inline std::vector<Q> random_weights(std::mt19937_64& rng, std::size_t levels, long max = 1L << 16) {
  std::vector<Q> w;
  for (std::size_t k = 0; k < levels; ++k) w.push_back(random_rational(rng, max));
  return w;
}

}  // namespace oracle
