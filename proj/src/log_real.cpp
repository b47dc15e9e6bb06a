#include "cantordim/log_real.hpp"

#include <utility>

namespace cantordim {

namespace mp = boost::multiprecision;

namespace {

int sign_value(LogReal::Sign s) { return static_cast<int>(s); }

LogReal::Sign sign_of(int v) {
  return v > 0 ? LogReal::Sign::positive : (v < 0 ? LogReal::Sign::negative : LogReal::Sign::zero);
}

// Below this log-gap the smaller term cannot change the working-precision sum.
Real negligible_gap() {
  return Real(static_cast<int>(working_precision()) + 10) * ln10();
}

}  // namespace

LogReal LogReal::one() { return from_log(Real(0)); }

LogReal LogReal::from_log(Real log_magnitude, Sign sign) {
  LogReal r;
  if (sign == Sign::zero) return r;
  if (mp::isinf(log_magnitude) && log_magnitude < 0) return r;
  if (mp::isnan(log_magnitude)) throw DomainError("LogReal: NaN log magnitude");
  r.sign_ = sign;
  r.log_magnitude_ = std::move(log_magnitude);
  return r;
}

LogReal LogReal::from_real(const Real& value) {
  if (value == 0) return LogReal();
  return from_log(mp::log(mp::abs(value)), value > 0 ? Sign::positive : Sign::negative);
}

LogReal LogReal::from_rational(const Rational& value) {
  if (value == 0) return LogReal();
  return from_log(log_of(Rational(mp::abs(value))), value > 0 ? Sign::positive : Sign::negative);
}

const Real& LogReal::log_magnitude() const {
  if (is_zero()) throw DomainError("LogReal: log magnitude of zero");
  return log_magnitude_;
}

Real LogReal::to_real() const {
  if (is_zero()) return Real(0);
  Real v = mp::exp(log_magnitude_);
  return sign_ == Sign::negative ? Real(-v) : v;
}

LogReal LogReal::operator-() const {
  LogReal r = *this;
  r.sign_ = sign_of(-sign_value(sign_));
  return r;
}

LogReal LogReal::operator*(const LogReal& rhs) const {
  if (is_zero() || rhs.is_zero()) return LogReal();
  return from_log(log_magnitude_ + rhs.log_magnitude_, sign_of(sign_value(sign_) * sign_value(rhs.sign_)));
}

LogReal LogReal::operator/(const LogReal& rhs) const {
  if (rhs.is_zero()) throw DomainError("LogReal: division by zero");
  if (is_zero()) return LogReal();
  return from_log(log_magnitude_ - rhs.log_magnitude_, sign_of(sign_value(sign_) * sign_value(rhs.sign_)));
}

LogReal LogReal::operator+(const LogReal& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  const LogReal* big = this;
  const LogReal* small = &rhs;
  if (rhs.log_magnitude_ > log_magnitude_) std::swap(big, small);
  const Real gap = small->log_magnitude_ - big->log_magnitude_;  // <= 0
  if (gap < -negligible_gap()) return *big;
  const Real ratio = mp::exp(gap);
  if (big->sign_ == small->sign_) {
    return from_log(big->log_magnitude_ + mp::log1p(ratio), big->sign_);
  }
  if (gap == 0) return LogReal();
  return from_log(big->log_magnitude_ + mp::log1p(Real(-ratio)), big->sign_);
}

LogReal LogReal::operator-(const LogReal& rhs) const { return *this + (-rhs); }

LogReal LogReal::pow(const Real& exponent) const {
  if (sign_ == Sign::negative) throw DomainError("LogReal: power of a negative value");
  if (is_zero()) {
    if (exponent > 0) return LogReal();
    if (exponent == 0) return one();
    throw DomainError("LogReal: negative power of zero");
  }
  return from_log(log_magnitude_ * exponent);
}

std::partial_ordering LogReal::operator<=>(const LogReal& rhs) const {
  const int ls = sign_value(sign_);
  const int rs = sign_value(rhs.sign_);
  if (ls != rs) return ls <=> rs;
  if (ls == 0) return std::partial_ordering::equivalent;
  std::partial_ordering by_mag = std::partial_ordering::equivalent;
  if (log_magnitude_ < rhs.log_magnitude_) by_mag = std::partial_ordering::less;
  else if (log_magnitude_ > rhs.log_magnitude_) by_mag = std::partial_ordering::greater;
  if (ls > 0) return by_mag;
  if (by_mag == std::partial_ordering::less) return std::partial_ordering::greater;
  if (by_mag == std::partial_ordering::greater) return std::partial_ordering::less;
  return by_mag;
}

bool LogReal::operator==(const LogReal& rhs) const {
  return (*this <=> rhs) == std::partial_ordering::equivalent;
}

LogReal LogReal::sum(std::span<const LogReal> terms) {
  const LogReal* peak = nullptr;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    if (!peak || t.log_magnitude_ > peak->log_magnitude_) peak = &t;
  }
  if (!peak) return LogReal();
  const Real shift = peak->log_magnitude_;
  const Real floor = -negligible_gap();

  Real total = 0;
  Real carry = 0;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    const Real gap = t.log_magnitude_ - shift;
    if (gap < floor) continue;
    Real v = mp::exp(gap);
    if (t.sign_ == Sign::negative) v = -v;
    const Real next = total + v;
    if (mp::abs(total) >= mp::abs(v)) {
      carry += (total - next) + v;
    } else {
      carry += (v - next) + total;
    }
    total = next;
  }
  total += carry;
  if (total == 0) return LogReal();
  return from_log(shift + mp::log(mp::abs(total)), total > 0 ? Sign::positive : Sign::negative);
}

}  // namespace cantordim
