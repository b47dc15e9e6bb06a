#include "cantordim/codec.hpp"

namespace cantordim {

namespace mp = boost::multiprecision;

DigitString::DigitString(BasicSequence seq, std::vector<BigInt> digits, Rank max_rank)
    : seq_(std::move(seq)), digits_(std::move(digits)) {
  if (digits_.size() > max_rank) {
    throw DomainError("digit string rank " + std::to_string(digits_.size()) +
                      " exceeds the rank cap " + std::to_string(max_rank));
  }
  for (Rank i = 0; i < digits_.size(); ++i) {
    if (digits_[i] < 0 || digits_[i] >= seq_.term(i + 1)) {
      throw DomainError("digit " + digits_[i].str() + " out of range at rank " +
                        std::to_string(i + 1));
    }
  }
}

DigitString DigitString::prefix(Rank k) const {
  if (k > rank()) throw DomainError("prefix longer than the digit string");
  return DigitString(seq_, std::vector<BigInt>(digits_.begin(), digits_.begin() + k));
}

DigitString DigitString::extended(BigInt digit) const {
  std::vector<BigInt> digits = digits_;
  digits.push_back(std::move(digit));
  return DigitString(seq_, std::move(digits));
}

bool DigitString::operator==(const DigitString& rhs) const {
  return digits_ == rhs.digits_ && seq_ == rhs.seq_;
}

DigitString encode(const Rational& x, const BasicSequence& seq, Rank k, Rank max_rank) {
  if (x < 0 || x >= 1) throw DomainError("encode needs 0 <= x < 1");
  if (k > max_rank) throw DomainError("encode rank exceeds the rank cap");
  std::vector<BigInt> digits;
  digits.reserve(k);
  BigInt num = mp::numerator(x);
  const BigInt den = mp::denominator(x);
  // x_i = num / den; a_i = floor(x_i n_i); x_{i+1} = x_i n_i - a_i.
  for (Rank i = 1; i <= k; ++i) {
    num *= seq.term(i);
    BigInt digit = num / den;
    num -= digit * den;
    digits.push_back(std::move(digit));
  }
  return DigitString(seq, std::move(digits), max_rank);
}

Rational decode(const DigitString& d) {
  // Horner form from the deepest digit keeps a single denominator.
  BigInt num = 0;
  BigInt den = 1;
  for (Rank i = 0; i < d.rank(); ++i) {
    const BigInt n = d.sequence().term(i + 1);
    den *= n;
    num = num * n + d[i];
  }
  return Rational(num, den);
}

Cylinder cylinder(const DigitString& d) {
  BigInt num = 0;
  BigInt den = 1;
  for (Rank i = 0; i < d.rank(); ++i) {
    const BigInt n = d.sequence().term(i + 1);
    den *= n;
    num = num * n + d[i];
  }
  Rational left(num, den);
  Rational length(BigInt(1), den);
  Rational right = left + length;
  return {d, std::move(left), std::move(right), std::move(length)};
}

std::vector<Cylinder> children(const Cylinder& c) {
  const Rank next = c.digits.rank() + 1;
  const BigInt n = c.digits.sequence().term(next);
  if (n > kMaxChildren) {
    throw DomainError("cylinder has " + n.str() + " children; refusing to materialise");
  }
  const auto count = n.convert_to<std::uint64_t>();
  const Rational length = c.length / Rational(n);
  std::vector<Cylinder> out;
  out.reserve(count);
  Rational left = c.left;
  for (std::uint64_t j = 0; j < count; ++j) {
    Rational right = left + length;
    out.push_back({c.digits.extended(BigInt(j)), left, right, length});
    left = std::move(right);
  }
  return out;
}

}  // namespace cantordim
