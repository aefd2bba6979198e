#pragma once

// Finite one-body spectra and their Boltzmann weight vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bosecorr/numerics.hpp"

namespace bosecorr {

/// Distinct energies in ascending order with their degeneracies, plus the
/// inverse temperature. When log_base r is set the Boltzmann factor of
/// energy e is r^(beta*e) instead of exp(-beta*e); this is what makes
/// ladder spectra exactly representable.
class LevelSet {
 public:
  LevelSet(std::vector<Rational> energies, std::vector<int> degeneracies, Rational beta,
           std::optional<Rational> log_base = std::nullopt);

  const std::vector<Rational>& energies() const { return energies_; }
  const std::vector<int>& degeneracies() const { return degeneracies_; }
  const Rational& beta() const { return beta_; }
  const std::optional<Rational>& log_base() const { return log_base_; }

  /// Same levels at another inverse temperature.
  LevelSet with_beta(Rational beta) const;

  /// Number of expanded levels, sum of degeneracies.
  std::size_t size() const;
  /// One energy per expanded level, ascending.
  std::vector<Rational> expanded_energies() const;
  /// At least two distinct energies, i.e. a gap above the ground level.
  bool has_gap() const { return energies_.size() >= 2; }

  /// ln of the Boltzmann factor of an energy, in double precision.
  double log_weight(const Rational& energy) const;
  /// Energy scale factor s such that x = exp(-beta * s * e); 1 without a
  /// log base, -ln r with one.
  double energy_scale() const;

 private:
  std::vector<Rational> energies_;
  std::vector<int> degeneracies_;
  Rational beta_;
  std::optional<Rational> log_base_;
};

/// Strictly positive weights x_i, one per expanded level.
template <ScalarBackend T>
class WeightVector {
 public:
  explicit WeightVector(std::vector<T> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error("empty-weights", "a weight vector needs at least one level");
    for (const auto& x : weights_) {
      if (!is_positive(x)) throw Error("nonpositive-weight", "weights must be strictly positive");
    }
  }

  /// The zero-level system, reachable only through remove_level with
  /// allow_empty.
  static WeightVector empty() { return WeightVector(); }

  std::size_t size() const { return weights_.size(); }
  bool is_empty() const { return weights_.empty(); }
  const T& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<T>& values() const { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  WeightVector() = default;
  std::vector<T> weights_;
};

/// x_i = exp(-beta e_i) per expanded level, ordered by ascending energy.
/// Exact mode needs a log base and an integer beta*e_i for every energy,
/// else throws "exact-weight-unrepresentable".
template <ScalarBackend T>
WeightVector<T> weights_from_spectrum(const LevelSet& levels) {
  std::vector<T> weights;
  weights.reserve(levels.size());
  for (std::size_t k = 0; k < levels.energies().size(); ++k) {
    const Rational& e = levels.energies()[k];
    T x;
    if constexpr (std::is_same_v<T, Rational>) {
      const Rational exponent = levels.beta() * e;
      if (sgn(exponent) == 0) {
        x = Rational(1);
      } else if (!levels.log_base() || exponent.get_den() != 1) {
        throw Error("exact-weight-unrepresentable",
                    "exp(-beta*e) is not rational here; supply a log_base with integer beta*e, or "
                    "supply weights directly");
      } else {
        x = pow(*levels.log_base(), exponent.get_num().get_si());
      }
    } else {
      x = LogFloat::from_log(levels.log_weight(e));
    }
    for (int d = 0; d < levels.degeneracies()[k]; ++d) weights.push_back(x);
  }
  return WeightVector<T>(std::move(weights));
}

template <ScalarBackend T>
WeightVector<T> add_level(const WeightVector<T>& w, const T& x) {
  if (!is_positive(x)) throw Error("nonpositive-weight", "added level needs x > 0");
  std::vector<T> out = w.values();
  out.push_back(x);
  return WeightVector<T>(std::move(out));
}

/// Drops position i. Removing the last remaining level is only allowed
/// with allow_empty (double-removal tables can reach the empty system).
template <ScalarBackend T>
WeightVector<T> remove_level(const WeightVector<T>& w, std::size_t i, bool allow_empty = false) {
  if (i >= w.size()) {
    throw Error("index-out-of-range",
                "level " + std::to_string(i) + " of a " + std::to_string(w.size()) + "-level system");
  }
  if (w.size() == 1) {
    if (!allow_empty) throw Error("empty-weights", "removing the only level");
    return WeightVector<T>::empty();
  }
  std::vector<T> out = w.values();
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return WeightVector<T>(std::move(out));
}

/// Removes a set of distinct positions (any order).
template <ScalarBackend T>
WeightVector<T> remove_levels(const WeightVector<T>& w, std::vector<std::size_t> removed) {
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()) {
    throw Error("duplicate-index", "removed levels must be distinct");
  }
  if (!removed.empty() && removed.back() >= w.size()) {
    throw Error("index-out-of-range", "removed level " + std::to_string(removed.back()) + " of a " +
                                          std::to_string(w.size()) + "-level system");
  }
  std::vector<T> out;
  out.reserve(w.size() - removed.size());
  std::size_t r = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (r < removed.size() && removed[r] == k) {
      ++r;
      continue;
    }
    out.push_back(w[k]);
  }
  if (out.empty()) return WeightVector<T>::empty();
  return WeightVector<T>(std::move(out));
}

/// Injective map from positions of w0 into positions of w1 matching equal
/// weights with multiplicity; exact equality for Rational, relative 1e-12
/// for LogFloat. Throws "not-a-superset".
template <ScalarBackend T>
std::vector<std::size_t> superset_embedding(const WeightVector<T>& w0, const WeightVector<T>& w1) {
  auto same = [](const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Rational>) {
      return a == b;
    } else {
      return std::fabs(a.log() - b.log()) <= 1e-12;
    }
  };
  std::vector<bool> used(w1.size(), false);
  std::vector<std::size_t> map;
  map.reserve(w0.size());
  for (std::size_t i = 0; i < w0.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < w1.size(); ++j) {
      if (!used[j] && same(w0[i], w1[j])) {
        used[j] = true;
        map.push_back(j);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error("not-a-superset", "weight at position " + std::to_string(i) +
                                        " has no unused match in the larger spectrum");
    }
  }
  return map;
}

}  // namespace bosecorr
