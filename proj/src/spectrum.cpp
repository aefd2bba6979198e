#include "bosecorr/spectrum.hpp"

#include <numeric>

namespace bosecorr {

LevelSet::LevelSet(std::vector<Rational> energies, std::vector<int> degeneracies, Rational beta,
                   std::optional<Rational> log_base)
    : energies_(std::move(energies)),
      degeneracies_(std::move(degeneracies)),
      beta_(std::move(beta)),
      log_base_(std::move(log_base)) {
  if (energies_.empty()) throw Error("empty-spectrum", "a spectrum needs at least one level");
  if (energies_.size() != degeneracies_.size()) {
    throw Error("invalid-spectrum", "one degeneracy per energy required");
  }
  for (std::size_t k = 1; k < energies_.size(); ++k) {
    if (!(energies_[k - 1] < energies_[k])) {
      throw Error("invalid-spectrum", "energies must be strictly ascending");
    }
  }
  for (int d : degeneracies_) {
    if (d < 1) throw Error("invalid-spectrum", "degeneracies must be >= 1");
  }
  if (sgn(beta_) <= 0) throw Error("nonpositive-beta", "beta must be > 0");
  if (log_base_ && (sgn(*log_base_) <= 0 || *log_base_ >= 1)) {
    throw Error("invalid-log-base", "log_base must lie in (0, 1)");
  }
}

LevelSet LevelSet::with_beta(Rational beta) const {
  return LevelSet(energies_, degeneracies_, std::move(beta), log_base_);
}

std::size_t LevelSet::size() const {
  return std::accumulate(degeneracies_.begin(), degeneracies_.end(), std::size_t{0});
}

std::vector<Rational> LevelSet::expanded_energies() const {
  std::vector<Rational> out;
  out.reserve(size());
  for (std::size_t k = 0; k < energies_.size(); ++k) {
    for (int d = 0; d < degeneracies_[k]; ++d) out.push_back(energies_[k]);
  }
  return out;
}

double LevelSet::energy_scale() const { return log_base_ ? -log_abs(*log_base_) : 1.0; }

double LevelSet::log_weight(const Rational& energy) const {
  return -beta_.get_d() * energy_scale() * energy.get_d();
}

}  // namespace bosecorr
