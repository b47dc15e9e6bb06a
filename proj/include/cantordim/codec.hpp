#pragma once

#include <span>
#include <vector>

#include "cantordim/sequences.hpp"

namespace cantordim {

inline constexpr Rank kDefaultMaxRank = 1'000'000;

/// Finite digit prefix (a_1, ..., a_k) of a Cantor series expansion,
/// 0 <= a_i < n_i. The empty string stands for the whole interval [0, 1].
class DigitString {
 public:
  /// Throws DomainError when a digit is out of range or the rank exceeds
  /// `max_rank`.
  DigitString(BasicSequence seq, std::vector<BigInt> digits, Rank max_rank = kDefaultMaxRank);

  const BasicSequence& sequence() const { return seq_; }
  std::span<const BigInt> digits() const { return digits_; }
  Rank rank() const { return digits_.size(); }
  const BigInt& operator[](Rank i) const { return digits_[i]; }

  DigitString prefix(Rank k) const;
  DigitString extended(BigInt digit) const;

  bool operator==(const DigitString& rhs) const;

 private:
  BasicSequence seq_;
  std::vector<BigInt> digits_;
};

struct Cylinder {
  DigitString digits;
  Rational left;
  Rational right;
  Rational length;
};

/// Greedy digit extraction of x in [0, 1) to rank k.
DigitString encode(const Rational& x, const BasicSequence& seq, Rank k,
                   Rank max_rank = kDefaultMaxRank);

/// sum a_i / (n_1 ... n_i), exact.
Rational decode(const DigitString& d);

Cylinder cylinder(const DigitString& d);

inline constexpr std::uint64_t kMaxChildren = 1'000'000;

/// The n_{k+1} sub-cylinders of `c`, left to right. Refuses to materialise
/// more than kMaxChildren.
std::vector<Cylinder> children(const Cylinder& c);

}  // namespace cantordim
