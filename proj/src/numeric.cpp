#include "cantordim/numeric.hpp"

#include <cctype>
#include <mpfr.h>

namespace cantordim {

namespace {

void widen_exponent_range() {
  // Example 1 style magnitudes (10^(10^k)) need far more than the default
  // 2^30 exponent range.
  mpfr_set_emax(mpfr_get_emax_max());
  mpfr_set_emin(mpfr_get_emin_min());
}

struct PrecisionInit {
  PrecisionInit() {
    widen_exponent_range();
    Real::default_precision(kDefaultPrecision);
  }
};

const PrecisionInit precision_init;

}  // namespace

unsigned working_precision() { return Real::default_precision(); }

void set_working_precision(unsigned digits10) {
  if (digits10 < kMinPrecision) {
    throw ConfigError("precision must be at least " + std::to_string(kMinPrecision) +
                      " decimal digits");
  }
  widen_exponent_range();
  Real::default_precision(digits10);
}

ScopedPrecision::ScopedPrecision(unsigned digits10) : saved_(working_precision()) {
  set_working_precision(digits10);
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(saved_); }

Real precision_epsilon() {
  const int digits = static_cast<int>(working_precision()) - 5;
  return boost::multiprecision::pow(Real(10), -digits);
}

Real ln10() { return boost::multiprecision::log(Real(10)); }

Real pi() { return boost::multiprecision::acos(Real(-1)); }

Real to_real(const BigInt& n) { return Real(n); }

Real to_real(const Rational& q) { return Real(q); }

Real log_of(const BigInt& n) {
  if (n <= 0) throw DomainError("log of a non-positive integer");
  return boost::multiprecision::log(Real(n));
}

Real log_of(const Rational& q) {
  if (q <= 0) throw DomainError("log of a non-positive rational");
  return log_of(boost::multiprecision::numerator(q)) -
         log_of(boost::multiprecision::denominator(q));
}

BigInt pow10(std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.backend().data(), 10, e);
  return r;
}

namespace {

// BigInt's string constructor reads a leading 0 as an octal prefix.
BigInt decimal_integer(const std::string& digits, bool negative) {
  BigInt r;
  mpz_set_str(r.backend().data(), digits.c_str(), 10);
  return negative ? BigInt(-r) : r;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ConfigError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ConfigError("malformed integer literal: " + s);
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw ConfigError("malformed integer literal: " + s);
    }
  }
  return decimal_integer(s.substr(i), s[0] == '-');
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt num = parse_bigint(std::string_view(s).substr(0, slash));
    const BigInt den = parse_bigint(std::string_view(s).substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in rational literal: " + s);
    return Rational(num, den);
  }

  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  std::string mantissa;
  std::int64_t scale = 0;
  bool seen_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    mantissa += s[i++];
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mantissa += s[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw ConfigError("malformed number literal: " + s);
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const std::string exponent = s.substr(i);
    try {
      std::size_t used = 0;
      scale += std::stoll(exponent, &used);
      if (used != exponent.size()) throw ConfigError("malformed exponent: " + s);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed exponent: " + s);
    }
    i = s.size();
  }
  if (i != s.size()) throw ConfigError("malformed number literal: " + s);

  const BigInt num = decimal_integer(mantissa, negative);
  if (scale >= 0) return Rational(num * pow10(static_cast<std::uint64_t>(scale)));
  return Rational(num, pow10(static_cast<std::uint64_t>(-scale)));
}

std::string format(const Real& x) {
  return x.str(static_cast<std::streamsize>(working_precision()));
}

bool near(const Real& a, const Real& b, const Real& tol) {
  using boost::multiprecision::abs;
  Real scale = 1;
  if (abs(a) > scale) scale = abs(a);
  if (abs(b) > scale) scale = abs(b);
  return abs(a - b) <= tol * scale;
}

}  // namespace cantordim
