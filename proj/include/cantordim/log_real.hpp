#pragma once

#include <compare>
#include <span>

#include "cantordim/numeric.hpp"

namespace cantordim {

/// Signed real held as (sign, ln|value|).
///
/// Products and quotients add and subtract log magnitudes, so values such as
/// 10^(-10^100) are carried exactly to working precision even though their
/// linear value underflows every floating format. The magnitude is an MPFR
/// number with the exponent range widened to its maximum, which bounds
/// |ln|value|| by roughly 10^(1.3e18).
class LogReal {
 public:
  enum class Sign { negative = -1, zero = 0, positive = 1 };

  /// Zero.
  LogReal() = default;

  static LogReal zero() { return LogReal(); }
  static LogReal one();
  static LogReal from_log(Real log_magnitude, Sign sign = Sign::positive);
  static LogReal from_real(const Real& value);
  static LogReal from_rational(const Rational& value);

  Sign sign() const { return sign_; }
  bool is_zero() const { return sign_ == Sign::zero; }

  /// ln|value|. Precondition: !is_zero().
  const Real& log_magnitude() const;

  /// Linear value; magnitudes beyond the MPFR exponent range flush to 0.
  Real to_real() const;

  LogReal operator-() const;
  LogReal operator*(const LogReal& rhs) const;
  LogReal operator/(const LogReal& rhs) const;
  LogReal operator+(const LogReal& rhs) const;
  LogReal operator-(const LogReal& rhs) const;
  LogReal& operator*=(const LogReal& rhs) { return *this = *this * rhs; }
  LogReal& operator+=(const LogReal& rhs) { return *this = *this + rhs; }

  /// |value|^exponent for a non-negative value.
  LogReal pow(const Real& exponent) const;

  std::partial_ordering operator<=>(const LogReal& rhs) const;
  bool operator==(const LogReal& rhs) const;

  /// Sum of same-signed or mixed terms. The dominant magnitude is factored
  /// out and the scaled terms are accumulated with Neumaier compensation.
  static LogReal sum(std::span<const LogReal> terms);

 private:
  Sign sign_ = Sign::zero;
  Real log_magnitude_;
};

}  // namespace cantordim
