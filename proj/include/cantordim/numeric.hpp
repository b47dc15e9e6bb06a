#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace cantordim {

using Real = boost::multiprecision::mpfr_float;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Rank = std::uint64_t;

// Raised when an argument is outside the mathematical domain of an operation
// (digit out of range, x outside [0,1), k below the minimum rank, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised for malformed descriptors and configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr unsigned kDefaultPrecision = 50;
inline constexpr unsigned kMinPrecision = 15;

/// Significant decimal digits used for every Real created from now on.
///
/// The working precision is a process-wide setting (MPFR default precision).
/// Values keep the precision they were created with, so switch precision
/// only between computations, never in the middle of one.
unsigned working_precision();
void set_working_precision(unsigned digits10);

class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits10);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

/// 10^-(precision - 5): tolerance for quantities that are equal in exact
/// arithmetic but were reached through different rounding paths.
Real precision_epsilon();

Real ln10();
Real pi();

/// Natural log of a positive big integer.
Real log_of(const BigInt& n);

/// Natural log of a positive exact rational.
Real log_of(const Rational& q);

Real to_real(const Rational& q);
Real to_real(const BigInt& n);

/// Exact rational from "p/q", an integer, or a decimal literal such as
/// "0.125" or "1e-3".
Rational parse_rational(std::string_view text);

BigInt parse_bigint(std::string_view text);

BigInt pow10(std::uint64_t e);

/// Decimal rendering with `working_precision()` significant digits.
std::string format(const Real& x);

/// Relative-or-absolute closeness: |a-b| <= tol * max(1, |a|, |b|).
bool near(const Real& a, const Real& b, const Real& tol);

}  // namespace cantordim
