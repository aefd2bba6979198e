#include "bosecorr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace bosecorr {

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw Error("input-format", what); }

Rational json_rational(const nlohmann::json& v, const char* field) {
  if (v.is_string()) return parse_number(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad_input(std::string(field) + " must be finite");
    return Rational(d);
  }
  bad_input(std::string(field) + " must be a number or a \"p/q\" string");
}

}  // namespace

Rational parse_number(std::string_view text) {
  if (text.find('/') != std::string_view::npos ||
      text.find_first_of(".eE") == std::string_view::npos) {
    return parse_rational(text);
  }
  // decimal with optional exponent, converted exactly
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const auto exp_text = text.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_text.data() + (exp_text.starts_with('+') ? 1 : 0),
                                     exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
      throw Error("invalid-rational", "cannot parse \"" + std::string(text) + "\"");
    }
  }
  std::string digits;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (digits.empty() || digits == "-" || digits == "+") {
    throw Error("invalid-rational", "cannot parse \"" + std::string(text) + "\"");
  }
  Rational q = parse_rational(digits);
  if (exponent > 400 || exponent < -400) throw Error("invalid-rational", "exponent out of range");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) {
    q *= Rational(scale);
  } else {
    q /= Rational(scale);
  }
  return q;
}

SpectrumInput parse_spectrum(const nlohmann::json& doc) {
  if (!doc.is_object()) bad_input("spectrum file must hold a JSON object");
  SpectrumInput in;
  if (!doc.contains("mode") || !doc["mode"].is_string()) bad_input("\"mode\" must be \"exact\" or \"logfloat\"");
  try {
    in.mode = parse_mode(doc["mode"].get<std::string>());
  } catch (const Error& e) {
    bad_input(e.what());
  }
  const bool has_levels = doc.contains("levels");
  const bool has_weights = doc.contains("weights");
  if (has_levels == has_weights) bad_input("exactly one of \"levels\" and \"weights\" must be present");

  try {
    if (has_weights) {
      const auto& ws = doc["weights"];
      if (!ws.is_array() || ws.empty()) bad_input("\"weights\" must be a nonempty array");
      for (const auto& v : ws) {
        if (v.is_number_float()) {
          in.weights.emplace_back(v.get<double>());
        } else {
          in.weights.emplace_back(json_rational(v, "weight"));
        }
      }
      return in;
    }

    const auto& ls = doc["levels"];
    if (!ls.is_array() || ls.empty()) bad_input("\"levels\" must be a nonempty array");
    if (!doc.contains("beta")) bad_input("\"beta\" is required with \"levels\"");
    std::vector<Rational> energies;
    std::vector<int> degeneracies;
    for (const auto& level : ls) {
      if (!level.is_object() || !level.contains("energy")) bad_input("each level needs an \"energy\"");
      energies.push_back(json_rational(level["energy"], "energy"));
      int d = 1;
      if (level.contains("degeneracy")) {
        if (!level["degeneracy"].is_number_integer()) bad_input("\"degeneracy\" must be an integer");
        d = level["degeneracy"].get<int>();
      }
      degeneracies.push_back(d);
    }
    std::optional<Rational> log_base;
    if (doc.contains("log_base")) log_base = json_rational(doc["log_base"], "log_base");
    in.levels.emplace(std::move(energies), std::move(degeneracies), json_rational(doc["beta"], "beta"),
                      std::move(log_base));
  } catch (const Error& e) {
    if (e.code() == "input-format") throw;
    bad_input(e.what());
  } catch (const nlohmann::json::exception& e) {
    bad_input(e.what());
  }
  return in;
}

SpectrumInput load_spectrum(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) bad_input("cannot open spectrum file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    bad_input(path.string() + ": " + e.what());
  }
  return parse_spectrum(doc);
}

std::vector<Rational> parse_beta_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw Error("invalid-grid", "grid must look like start:stop:steps");
  const Rational start = parse_number(text.substr(0, first));
  const Rational stop = parse_number(text.substr(first + 1, second - first - 1));
  const auto steps_text = text.substr(second + 1);
  long steps = 0;
  auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
  if (ec != std::errc() || ptr != steps_text.data() + steps_text.size() || steps < 1) {
    throw Error("invalid-grid", "steps must be an integer >= 1");
  }
  if (steps == 1) return {start};
  if (!(start < stop)) throw Error("invalid-grid", "grid must be strictly increasing");
  std::vector<Rational> grid;
  const Rational step = (stop - start) / Rational(steps - 1);
  for (long k = 0; k < steps; ++k) grid.push_back(start + step * k);
  return grid;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

nlohmann::json scalar_json(const Rational& q) { return to_string(q); }

nlohmann::json scalar_json(const LogFloat& x) {
  nlohmann::json value = x.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(x.log());
  return {{"log", true}, {"value", value}};
}

nlohmann::json signed_json(const Rational& q) { return to_string(q); }
nlohmann::json signed_json(double x) { return x; }
std::string scalar_csv(const Rational& q) { return to_string(q); }
std::string scalar_csv(const LogFloat& x) { return x.is_zero() ? "-inf" : format_double(x.log()); }
std::string signed_csv(const Rational& q) { return to_string(q); }
std::string signed_csv(double x) { return format_double(x); }

}  // namespace bosecorr
