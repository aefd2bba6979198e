#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "bosecorr/error.hpp"
#include "bosecorr/numerics.hpp"
#include "bosecorr/spectrum.hpp"
#include "doctest.h"

namespace test {

using bosecorr::Rational;

inline Rational q(const char* text) { return bosecorr::parse_rational(text); }

inline bosecorr::WeightVector<Rational> weights(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(q(t));
  return bosecorr::WeightVector<Rational>(std::move(out));
}

inline bosecorr::WeightVector<Rational> weights(const std::vector<Rational>& values) {
  return bosecorr::WeightVector<Rational>(values);
}

inline bosecorr::WeightVector<bosecorr::LogFloat> to_logfloat(const bosecorr::WeightVector<Rational>& w) {
  std::vector<bosecorr::LogFloat> out;
  for (const auto& x : w) out.push_back(bosecorr::LogFloat::from_rational(x));
  return bosecorr::WeightVector<bosecorr::LogFloat>(std::move(out));
}

template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const bosecorr::Error& e) {
    return e.code();
  }
  return "<no error>";
}

}  // namespace test

#define CHECK_ERROR_CODE(expr, code) CHECK(test::error_code([&] { (void)(expr); }) == std::string(code))
