#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantordim/log_real.hpp"
#include "cantordim/numeric.hpp"

namespace cantordim {

enum class SequenceKind { constant, arithmetic, geometric, counterexample, custom };

/// Continuation rule for a custom table past its last entry.
enum class TailRule {
  none,        // the table is the whole sequence; ranks past it are rejected
  repeat,      // keep the last term
  arithmetic,  // keep the last difference
  geometric,   // keep the last (integral) ratio
};

std::string to_string(SequenceKind kind);
std::string to_string(TailRule rule);

/// The basic sequence {n_k}, k >= 1, of a Cantor series expansion.
///
/// Immutable value type; copies share the custom table.
class BasicSequence {
 public:
  static BasicSequence constant(BigInt s);
  static BasicSequence arithmetic(BigInt a1, BigInt d);
  static BasicSequence geometric(BigInt b1, BigInt q);
  /// n_k = 10^k at k = 10^s (s >= 1), n_k = 2 elsewhere.
  static BasicSequence counterexample();
  static BasicSequence custom(std::vector<BigInt> table, TailRule tail = TailRule::none);

  SequenceKind kind() const { return kind_; }

  /// Largest admissible rank, if the sequence is finite.
  std::optional<Rank> max_rank() const;

  BigInt term(Rank k) const;

  /// ln(n_k).
  Real log_term(Rank k) const;

  /// The product n_1 * ... * n_k in log form (ln of the product is
  /// `log_magnitude()`). Closed forms are used where they exist.
  LogReal log_prefix_product(Rank k) const;

  /// True when {n_k} is bounded over all k (decided from the generator, not
  /// from sampled terms).
  bool is_bounded() const;

  /// n_1 < n_2 < ... < n_{k_max}.
  bool is_strictly_increasing(Rank k_max) const;

  static bool is_spike_rank(Rank k);

  // Generator parameters: (s) for constant, (a1, d) for arithmetic,
  // (b1, q) for geometric.
  const BigInt& first() const { return first_; }
  const BigInt& step() const { return step_; }
  const std::vector<BigInt>& table() const;
  TailRule tail() const { return tail_; }

  bool operator==(const BasicSequence& rhs) const;

 private:
  BasicSequence() = default;
  void check_rank(Rank k) const;
  Real log_table_prefix(Rank k) const;

  SequenceKind kind_ = SequenceKind::constant;
  BigInt first_;
  BigInt step_;
  std::shared_ptr<const std::vector<BigInt>> table_;
  TailRule tail_ = TailRule::none;
};

/// ln(n_k) / ln(n_1 * ... * n_{k-1}), k >= 2.
Real faithfulness_ratio(const BasicSequence& seq, Rank k);

struct LogFactorialBounds {
  Real lower;
  Real upper;
};

/// ln(sqrt(2 pi m)) + m ln(m / e) -+ 1/(12 m): an interval containing ln(m!).
LogFactorialBounds stirling_log_factorial(std::uint64_t m);

/// (ln b1 + (k-1) ln q) / lower Stirling bound of ln((k-2)!), k >= 4: the
/// upper bound on the faithfulness ratio implied by a_k <= n_k <= b1 q^(k-1).
Real envelope_ratio_bound(const BigInt& b1, const BigInt& q, Rank k);

struct FaithfulnessThresholds {
  double met_tol = 0.05;
  double violation_threshold = 0.5;
};

enum class FaithfulnessVerdict { criterion_met_numerically, criterion_violated, inconclusive };

std::string to_string(FaithfulnessVerdict verdict);

struct GeometricEnvelope {
  BigInt b1;
  BigInt q;
};

struct EnvelopeCheck {
  bool holds = false;  // both envelopes hold on 1..k_max
  bool lower_holds = false;
  bool upper_holds = false;
  bool upper_supplied = false;  // caller fixed (b1, q) instead of fitting
  BigInt a1, d;                 // tightest arithmetic minorant (valid when lower_holds)
  BigInt b1, q;                 // geometric majorant used for the bound
  bool degenerate_q = false;    // q == 1: constant majorant
  bool bound_dominates = false;  // bound_k >= r_k wherever both are defined
  std::optional<Rank> bound_decreasing_from;  // K0: bound decreasing on [K0, k_max]
  std::vector<std::pair<Rank, Real>> bounds;  // (k, bound_k), 4 <= k <= k_max
};

struct SubgeometricCheck {
  bool holds = false;  // always true on a finite range; kept for the report shape
  BigInt q;            // smallest integer q with n_k <= q^k on 1..k_max
  bool strictly_increasing = false;
  bool corollary_applies = false;  // strictly increasing and subgeometric
};

struct FaithfulnessReport {
  Rank k_max = 0;
  FaithfulnessThresholds thresholds;
  std::vector<std::pair<Rank, Real>> ratios;  // every k in [2, k_max]
  std::vector<Real> decade_maxima;            // max r_k over (10^j, 10^(j+1)]
  FaithfulnessVerdict verdict = FaithfulnessVerdict::inconclusive;
  std::vector<Rank> witnesses;  // spike ranks with r_k >= violation_threshold
  EnvelopeCheck envelope;
  SubgeometricCheck subgeometric;
  Real square_summable_partial;  // sum of r_k^2 over [2, k_max]
};

/// Numeric assessment of lim r_k = 0 on ranks 2..k_max.
///
/// Met: decade maxima strictly decrease and every r_k of the last decade is
/// below met_tol. Violated: r_k >= violation_threshold at rising spikes in at
/// least two distinct decades; this wins over Met, since a trailing decade
/// can end before its spike. Otherwise inconclusive.
FaithfulnessReport faithfulness_diagnostic(const BasicSequence& seq, Rank k_max,
                                           const FaithfulnessThresholds& thresholds = {},
                                           const std::optional<GeometricEnvelope>& envelope = {});

}  // namespace cantordim
