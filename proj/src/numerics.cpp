#include "bosecorr/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace bosecorr {

std::string_view to_string(Mode mode) {
  return mode == Mode::Exact ? "exact" : "logfloat";
}

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "logfloat") return Mode::LogFloat;
  throw Error("invalid-mode", "mode must be \"exact\" or \"logfloat\", got \"" + std::string(text) + "\"");
}

LogFloat LogFloat::from_value(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error("negative-scalar", "LogFloat needs a finite nonnegative value");
  }
  return v == 0.0 ? zero() : from_log(std::log(v));
}

LogFloat LogFloat::from_rational(const Rational& q) {
  if (sgn(q) < 0) throw Error("negative-scalar", "LogFloat needs a nonnegative value");
  return sgn(q) == 0 ? zero() : from_log(log_abs(q));
}

double LogFloat::log() const {
  if (zero_) throw Error("log-of-zero", "log of the zero sentinel");
  return log_;
}

double LogFloat::value() const { return zero_ ? 0.0 : std::exp(log_); }

LogFloat operator*(const LogFloat& a, const LogFloat& b) {
  if (a.zero_ || b.zero_) return LogFloat::zero();
  return LogFloat::from_log(a.log_ + b.log_);
}

LogFloat operator/(const LogFloat& a, const LogFloat& b) {
  if (b.zero_) throw Error("division-by-zero", "LogFloat division by zero");
  if (a.zero_) return LogFloat::zero();
  return LogFloat::from_log(a.log_ - b.log_);
}

LogFloat operator+(const LogFloat& a, const LogFloat& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  const double hi = std::max(a.log_, b.log_);
  const double lo = std::min(a.log_, b.log_);
  return LogFloat::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogFloat log_sum_exp(std::span<const LogFloat> values) {
  if (values.empty()) throw Error("empty-sum", "log_sum_exp of an empty list");
  double max_log = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    any = true;
    max_log = std::max(max_log, v.log());
  }
  if (!any) return LogFloat::zero();
  double acc = 0.0;
  for (const auto& v : values) {
    if (!v.is_zero()) acc += std::exp(v.log() - max_log);
  }
  return LogFloat::from_log(max_log + std::log(acc));
}

double log_sum_exp(std::span<const double> log_values) {
  if (log_values.empty()) throw Error("empty-sum", "log_sum_exp of an empty list");
  const double max_log = *std::max_element(log_values.begin(), log_values.end());
  if (std::isinf(max_log)) return max_log;
  double acc = 0.0;
  for (double v : log_values) acc += std::exp(v - max_log);
  return max_log + std::log(acc);
}

Mode mode_of(const Scalar& s) {
  return std::holds_alternative<Rational>(s) ? Mode::Exact : Mode::LogFloat;
}

std::strong_ordering exact_compare(const Rational& a, const Rational& b) {
  const BigInt lhs = a.get_num() * b.get_den();
  const BigInt rhs = b.get_num() * a.get_den();
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering exact_compare(const Scalar& a, const Scalar& b) {
  const auto* qa = std::get_if<Rational>(&a);
  const auto* qb = std::get_if<Rational>(&b);
  if (qa == nullptr || qb == nullptr) {
    throw Error("mixed-backend", "exact_compare needs two exact scalars");
  }
  return exact_compare(*qa, *qb);
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) {
    throw Error("invalid-rational", "cannot parse \"" + std::string(whole) + "\" as a rational");
  }
  for (std::size_t k = start; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw Error("invalid-rational", "cannot parse \"" + std::string(whole) + "\" as a rational");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_integer(text, text));
  } else {
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const BigInt den = parse_integer(text.substr(slash + 1), text);
    if (sgn(den) == 0) throw Error("invalid-rational", "zero denominator in \"" + std::string(text) + "\"");
    q = Rational(num, den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const LogFloat& x) {
  if (x.is_zero()) return "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x.log());
  return std::string(buf, ptr);
}

double log_abs(const BigInt& z) {
  if (sgn(z) == 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const Rational& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

Rational pow(const Rational& q, long k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (sgn(q) == 0) throw Error("division-by-zero", "negative power of zero");
    return pow(Rational(1) / q, -k);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
  // powers of coprime integers stay coprime
  Rational r;
  mpz_swap(r.get_num_mpz_t(), num.get_mpz_t());
  mpz_swap(r.get_den_mpz_t(), den.get_mpz_t());
  return r;
}

LogFloat pow(const LogFloat& x, long k) {
  if (k == 0) return LogFloat::one();
  if (x.is_zero()) {
    if (k < 0) throw Error("division-by-zero", "negative power of zero");
    return LogFloat::zero();
  }
  return LogFloat::from_log(static_cast<double>(k) * x.log());
}

}  // namespace bosecorr
