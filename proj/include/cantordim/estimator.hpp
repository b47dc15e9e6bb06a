#pragma once

#include <optional>
#include <vector>

#include "cantordim/codec.hpp"
#include "cantordim/measure.hpp"

namespace cantordim {

/// Ranks at which a DigitSetSpec swaps in its exception digits.
struct ExceptionRanks {
  enum class Kind { powers_of_ten, listed, periodic };
  Kind kind = Kind::powers_of_ten;
  std::vector<Rank> ranks;  // listed, sorted
  Rank every = 1;           // periodic: k % every == offset
  Rank offset = 0;

  static ExceptionRanks powers_of_ten() { return {}; }
  static ExceptionRanks listed(std::vector<Rank> ranks);
  static ExceptionRanks periodic(Rank every, Rank offset);

  bool contains(Rank k) const;
};

/// E = {x : a_k(x) in admissible(k) for all k}, a set described by per-rank
/// digit constraints.
class DigitSetSpec {
 public:
  enum class Kind { all, exceptions, per_rank };

  static DigitSetSpec all(BasicSequence seq);
  /// Every digit is allowed except at the exception ranks, where only
  /// `digits_at_exception` are.
  static DigitSetSpec with_exceptions(BasicSequence seq, ExceptionRanks ranks,
                                      std::vector<BigInt> digits_at_exception);
  /// Explicit lists; past the last list the pattern cycles when `cycle` is
  /// set and is undefined otherwise.
  static DigitSetSpec per_rank(BasicSequence seq, std::vector<std::vector<BigInt>> lists,
                               bool cycle);
  /// The set V: n_k = k + 1, digit 0 forced at k = 10^s, free elsewhere.
  static DigitSetSpec example1_v();

  Kind kind() const { return kind_; }
  const BasicSequence& sequence() const { return seq_; }
  const ExceptionRanks& exception_ranks() const { return exceptions_; }
  const std::vector<BigInt>& exception_digits() const { return exception_digits_; }
  const std::vector<std::vector<BigInt>>& lists() const { return lists_; }
  bool cycles() const { return cycle_; }

  std::optional<Rank> max_rank() const;
  BigInt admissible_count(Rank k) const;
  /// ln |admissible(k)|; reuses ln n_k when every digit is admissible.
  Real log_admissible_count(Rank k) const;
  bool admits(Rank k, const BigInt& digit) const;
  bool contains(const DigitString& d) const;

 private:
  DigitSetSpec() = default;
  const std::vector<BigInt>* restricted_digits(Rank k) const;

  Kind kind_ = Kind::all;
  BasicSequence seq_ = BasicSequence::constant(2);
  ExceptionRanks exceptions_;
  std::vector<BigInt> exception_digits_;
  std::vector<std::vector<BigInt>> lists_;
  bool cycle_ = false;
};

/// N_k = prod_{i <= k} |admissible(i)|.
BigInt count_cylinders(const DigitSetSpec& e, Rank k);

/// N_k (n_1 ... n_k)^(-alpha): the rank-k cylinder cover's alpha-sum.
Real premeasure(const DigitSetSpec& e, const Real& alpha, Rank k);

struct BoxEstimate {
  Real slope;
  Real intercept;
  Real residual;                    // RMS of the regression residuals
  std::vector<SeriesPoint> ratios;  // ln N_k / ln(n_1 ... n_k), k = 1..k_max
  /// True when the cylinder family is faithful for the sequence (bounded, or
  /// the faithfulness criterion holds numerically). Otherwise the slope is a
  /// dimension with respect to cylinder covers only.
  bool faithful_family = false;
};

/// Least-squares slope of ln N_k against ln(n_1 ... n_k), k = 2..k_max.
BoxEstimate box_dimension_estimate(const DigitSetSpec& e, Rank k_max);

}  // namespace cantordim
