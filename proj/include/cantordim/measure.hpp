#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantordim/codec.hpp"
#include "cantordim/log_real.hpp"
#include "cantordim/sequences.hpp"

namespace cantordim {

inline constexpr Rank kDefaultDepthCap = 100;

enum class RowRule { uniform, point_mass, example1, example1_psi, custom };

/// How small p_{0k} is at the ranks k = 10^s of Example 1:
/// double_exponent: 1/p_{0k} = 10^(10^k); triple_exponent: 1/p_{0k} = 10^(10^(10^k)).
enum class SpikeForm { double_exponent, triple_exponent };

enum class RowKind { uniform, point_mass, spike, table };

std::string to_string(RowRule rule);
std::string to_string(SpikeForm form);

/// Law of a random variable with independent Cantor symbols: one probability
/// row per rank, k = 1..depth_cap.
///
/// Rows are symbolic (uniform over n_k digits, point mass, the Example 1
/// spike row, or an explicit table of exact rationals), so a row over
/// n_k = 10^100 digits costs nothing to hold. Every probability leaves the
/// model as a LogReal.
class SymbolModel {
 public:
  static SymbolModel uniform(BasicSequence seq, Rank depth_cap = kDefaultDepthCap);
  static SymbolModel point_mass(BasicSequence seq, BigInt digit, Rank depth_cap = kDefaultDepthCap);
  /// n_k = k + 1; uniform rows off the ranks 10^s, spike rows on them.
  static SymbolModel example1(Rank depth_cap = kDefaultDepthCap,
                              SpikeForm form = SpikeForm::double_exponent);
  /// Companion of example1 whose spectrum is the set V: uniform off 10^s,
  /// point mass on digit 0 at 10^s.
  static SymbolModel example1_psi(Rank depth_cap = kDefaultDepthCap);
  /// Row k uses tables[(k - 1) mod tables.size()].
  static SymbolModel custom(BasicSequence seq, std::vector<std::vector<Rational>> tables,
                            Rank depth_cap = kDefaultDepthCap);

  const BasicSequence& sequence() const { return seq_; }
  RowRule rule() const { return rule_; }
  Rank depth_cap() const { return depth_cap_; }
  SpikeForm spike_form() const { return spike_form_; }
  const BigInt& point_digit() const { return point_digit_; }
  const std::vector<std::vector<Rational>>& tables() const { return tables_; }

  RowKind row_kind(Rank k) const;

  LogReal probability(Rank k, const BigInt& digit) const;
  /// sum_{j < digit} p_{jk}, linear.
  Real cumulative_below(Rank k, const BigInt& digit) const;
  /// m_k: number of strictly positive entries in row k.
  BigInt positive_count(Rank k) const;
  Real log_positive_count(Rank k) const;
  /// h_k = -sum p ln p with 0 ln 0 = 0.
  Real entropy(Rank k) const;
  LogReal min_probability(Rank k) const;
  /// sum_i p_{ik}, evaluated in the log domain.
  LogReal row_total(Rank k) const;

 private:
  SymbolModel() = default;
  void check_rank(Rank k) const;
  void check_digit(Rank k, const BigInt& digit) const;
  Real spike_log_p0(Rank k) const;

  BasicSequence seq_ = BasicSequence::constant(2);
  RowRule rule_ = RowRule::uniform;
  Rank depth_cap_ = kDefaultDepthCap;
  SpikeForm spike_form_ = SpikeForm::double_exponent;
  BigInt point_digit_;
  std::vector<std::vector<Rational>> tables_;
};

/// ln mu(cylinder) = sum_i ln p_{a_i, i}; zero (sign 0) iff some factor is 0.
LogReal cylinder_measure_log(const SymbolModel& m, const DigitString& d);

/// F(x) truncated at rank k; the error is at most the measure of the rank-k
/// cylinder containing x.
Real cdf(const SymbolModel& m, const Rational& x, Rank k);

Real entropy(const SymbolModel& m, Rank k);

enum class SeriesFormula { measure_entropy, spectrum_count, billingsley_ratio };

std::string to_string(SeriesFormula formula);

struct SeriesPoint {
  Rank k;
  Real value;
};

struct DimensionSeries {
  SeriesFormula formula = SeriesFormula::measure_entropy;
  std::vector<SeriesPoint> points;
  /// Running sum of (ln n_k / ln(n_1 ... n_{k-1}))^2; the entropy formula is
  /// only valid when this converges.
  Real precondition_partial;
};

/// d_k = (h_1 + ... + h_k) / ln(n_1 ... n_k).
DimensionSeries dim_measure_series(const SymbolModel& m, Rank k_max);

/// d_k = ln(m_1 ... m_k) / ln(n_1 ... n_k).
DimensionSeries dim_spectrum_series(const SymbolModel& m, Rank k_max);

struct LiminfEstimate {
  Real estimate;                         // min over the trailing window
  std::vector<SeriesPoint> lower_envelope;  // inf_{j >= k} d_j for each k
};

/// Heuristic liminf: no finite sample decides a liminf, so this reports the
/// trailing-window minimum together with the suffix-minimum envelope.
LiminfEstimate liminf_estimate(const DimensionSeries& s, std::size_t window);

enum class DpVerdict { hypotheses_met_dp_iff_dim1, necessary_conditions_met_only, necessary_conditions_violated };

std::string to_string(DpVerdict verdict);

struct DpReport {
  Rank k_max = 0;
  bool all_positive = false;
  std::optional<Rank> first_zero_rank;
  Real dim_estimate;
  bool dim_is_one = false;  // dim_estimate >= 1 - tol
  bool bounded = false;     // {n_k} bounded
  LogReal min_probability;  // inf p_{ik} over k <= k_max
  bool separated = false;   // min_probability > 0
  bool hypotheses_hold = false;
  DpVerdict verdict = DpVerdict::necessary_conditions_violated;
};

/// Necessary conditions for F to preserve Hausdorff dimension: positive
/// probabilities and dim mu = 1; plus whether the bounded-n_k,
/// separated-probability regime (where dim mu = 1 is also sufficient) applies.
DpReport dp_necessary_conditions(const SymbolModel& m, Rank k_max, double tol = 0.05,
                                 std::size_t window = 10);

}  // namespace cantordim
