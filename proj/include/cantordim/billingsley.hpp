#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantordim/estimator.hpp"
#include "cantordim/measure.hpp"

namespace cantordim {

/// ok: the ratio is finite and positive. zero_measure: some prefix
/// probability vanishes (ln mu = -inf). unit_measure: the prefix has measure
/// 1 (ln mu = 0). Flagged ratios carry the value 0.
enum class RatioFlag { ok, zero_measure, unit_measure };

std::string to_string(RatioFlag flag);

struct RatioValue {
  Real value;
  RatioFlag flag = RatioFlag::ok;
};

/// b_k = ln(n_1 ... n_k) / -ln mu(cylinder of the first k digits of d).
RatioValue billingsley_ratio(const SymbolModel& m, const DigitString& d, Rank k);

struct RatioPoint {
  Rank k;
  Real value;
  RatioFlag flag;
};

enum class Trend { rise, fall };

std::string to_string(Trend trend);

/// Maximal run of strict steps in one direction, b_first -> b_last.
struct MonotoneSegment {
  Rank first;
  Rank last;
  Trend trend;
};

struct RatioSeries {
  DigitString digits;
  std::vector<RatioPoint> points;
  std::vector<MonotoneSegment> segments;  // flat stretches are not segments
  std::vector<Rank> local_maxima;         // interior strict extrema only
  std::vector<Rank> local_minima;
};

RatioSeries ratio_series(const SymbolModel& m, const DigitString& d, Rank k_max);

/// Every digit at a rank 10^s (s >= 1) is 0.
bool v_membership(const DigitString& d);

/// The element of V with the largest admissible digit k at every free rank.
DigitString v_max_digits(Rank k);

struct Example1Options {
  Rank k_max = 100;
  std::uint64_t seed = 7;
  std::size_t samples = 3;
  SpikeForm spike_form = SpikeForm::double_exponent;
  std::size_t window = 10;
  double tol = 0.05;
};

struct LabelledRatioSeries {
  std::string label;
  RatioSeries series;
};

struct SpikePoint {
  unsigned s;
  Rank k;
  Real value;
};

struct Example1Report {
  Example1Options options;

  DimensionSeries measure;  // xi
  LiminfEstimate measure_liminf;
  bool measure_increasing_between_spikes = false;

  DimensionSeries spectrum;  // psi, whose spectrum is V
  LiminfEstimate spectrum_liminf;
  std::optional<BoxEstimate> v_box;  // independent cover-counting estimate, k_max >= 4

  std::vector<LabelledRatioSeries> ratios;
  std::optional<Real> spike_ratio_max;     // max b_k over spike ranks k >= 10, all series
  std::vector<SpikePoint> liminf_surrogates;  // b at k = 10^s
  std::vector<SpikePoint> limsup_surrogates;  // b at k = 10^s - 1
  bool surrogates_decreasing = false;

  DpReport dp;

  Real dim_v_estimate;
  Real delta_trailing_max;  // max b_k over the trailing window, all series
  Real image_dimension_bound;  // delta_trailing_max * dim_v_estimate
  bool predicts_zero_image_dimension = false;
  Real predicted_image_dimension;

  std::vector<std::string> notes;
};

/// End-to-end run of the Example 1 counterexample at truncated depth.
Example1Report example1_report(const Example1Options& options = {});

}  // namespace cantordim
