#pragma once

// Spectrum files and CSV/JSON rendering of scalars, tables and statistics.
//
// Rationals are written as "p/q" (or "p"). A LogFloat is written in JSON
// as {"log": true, "value": <ln x>} with a null value for zero, and in CSV
// as its log-value ("-inf" for zero).

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bosecorr/numerics.hpp"
#include "bosecorr/occupancy.hpp"
#include "bosecorr/partition.hpp"
#include "bosecorr/spectrum.hpp"

namespace bosecorr {

/// Contents of a spectrum file: either a level set or direct weights.
/// Schema problems throw Error with code "input-format".
struct SpectrumInput {
  Mode mode = Mode::Exact;
  std::optional<LevelSet> levels;
  std::vector<std::variant<Rational, double>> weights;  // when levels is empty

  template <ScalarBackend T>
  WeightVector<T> weight_vector() const {
    if (levels) return weights_from_spectrum<T>(*levels);
    std::vector<T> out;
    for (const auto& entry : weights) {
      if (const auto* q = std::get_if<Rational>(&entry)) {
        out.push_back(from_rational<T>(*q));
      } else if constexpr (std::is_same_v<T, Rational>) {
        throw Error("input-format", "exact mode needs weights as \"p/q\" strings or integers");
      } else {
        out.push_back(LogFloat::from_value(std::get<double>(entry)));
      }
    }
    return WeightVector<T>(std::move(out));
  }
};

SpectrumInput parse_spectrum(const nlohmann::json& doc);
SpectrumInput load_spectrum(const std::filesystem::path& path);

/// "3/4", "-2", "0.125", "1e-3" (decimal forms are converted exactly).
Rational parse_number(std::string_view text);

/// "start:stop:steps" -> steps points from start to stop inclusive.
std::vector<Rational> parse_beta_grid(std::string_view text);

/// Shortest round-trip decimal.
std::string format_double(double x);

nlohmann::json scalar_json(const Rational& q);
nlohmann::json scalar_json(const LogFloat& x);
nlohmann::json signed_json(const Rational& q);
nlohmann::json signed_json(double x);
std::string scalar_csv(const Rational& q);
std::string scalar_csv(const LogFloat& x);
std::string signed_csv(const Rational& q);
std::string signed_csv(double x);

template <ScalarBackend T>
nlohmann::json table_json(const PartitionTable<T>& table) {
  auto values = nlohmann::json::array();
  for (const auto& z : table.values()) values.push_back(scalar_json(z));
  return {{"mode", to_string(table.mode())}, {"removed", table.removed()}, {"Z", values}};
}

template <ScalarBackend T>
std::string table_csv(const PartitionTable<T>& table) {
  std::string out = "N,Z\n";
  for (std::size_t n = 0; n < table.values().size(); ++n) {
    out += std::to_string(n) + "," + scalar_csv(table[n]) + "\n";
  }
  return out;
}

template <ScalarBackend T>
nlohmann::json stats_json(const OccupancyStats<T>& stats) {
  auto means = nlohmann::json::array();
  for (const auto& m : stats.means) means.push_back(scalar_json(m));
  auto cov = nlohmann::json::array();
  for (const auto& row : stats.cov) {
    auto r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(signed_json(c));
    cov.push_back(r);
  }
  return {{"N", stats.n}, {"means", means}, {"cov", cov}, {"mode", to_string(mode_of<T>())}};
}

}  // namespace bosecorr
