#include "cantordim/billingsley.hpp"

#include <algorithm>
#include <random>

namespace cantordim {

std::string to_string(RatioFlag flag) {
  switch (flag) {
    case RatioFlag::ok: return "ok";
    case RatioFlag::zero_measure: return "zero_measure";
    case RatioFlag::unit_measure: return "unit_measure";
  }
  return "?";
}

std::string to_string(Trend trend) { return trend == Trend::rise ? "rise" : "fall"; }

namespace {

RatioValue make_ratio(const Real& log_length, const LogReal& measure) {
  if (measure.is_zero()) return {Real(0), RatioFlag::zero_measure};
  const Real log_measure = measure.log_magnitude();
  if (log_measure == 0) return {Real(0), RatioFlag::unit_measure};
  return {log_length / -log_measure, RatioFlag::ok};
}

void check_ratio_args(const SymbolModel& m, const DigitString& d, Rank k) {
  if (k < 1) throw DomainError("Billingsley ratio needs k >= 1");
  if (d.rank() < k) throw DomainError("digit string shorter than the requested rank");
  if (!(d.sequence() == m.sequence())) {
    throw DomainError("digit string and model use different basic sequences");
  }
  if (k > m.depth_cap()) throw DomainError("rank exceeds the model depth_cap");
}

}  // namespace

RatioValue billingsley_ratio(const SymbolModel& m, const DigitString& d, Rank k) {
  check_ratio_args(m, d, k);
  // Same summation order as cylinder_measure_log, so uniform prefixes cancel exactly.
  Real log_length = 0;
  for (Rank i = 1; i <= k; ++i) log_length += m.sequence().log_term(i);
  return make_ratio(log_length, cylinder_measure_log(m, d.prefix(k)));
}

RatioSeries ratio_series(const SymbolModel& m, const DigitString& d, Rank k_max) {
  check_ratio_args(m, d, k_max);
  RatioSeries out{d.prefix(k_max), {}, {}, {}, {}};
  out.points.reserve(k_max);
  Real log_length = 0;
  LogReal measure = LogReal::one();
  for (Rank k = 1; k <= k_max; ++k) {
    log_length += m.sequence().log_term(k);
    if (!measure.is_zero()) measure *= m.probability(k, d[k - 1]);
    const RatioValue b = make_ratio(log_length, measure);
    out.points.push_back({k, b.value, b.flag});
  }

  const auto& p = out.points;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].value == p[i - 1].value) continue;
    const Trend t = p[i].value > p[i - 1].value ? Trend::rise : Trend::fall;
    if (!out.segments.empty() && out.segments.back().trend == t && out.segments.back().last == p[i - 1].k) {
      out.segments.back().last = p[i].k;
    } else {
      out.segments.push_back({p[i - 1].k, p[i].k, t});
    }
    if (i + 1 < p.size()) {
      const Real& prev = p[i - 1].value;
      const Real& next = p[i + 1].value;
      if (p[i].value > prev && p[i].value > next) out.local_maxima.push_back(p[i].k);
      if (p[i].value < prev && p[i].value < next) out.local_minima.push_back(p[i].k);
    }
  }
  return out;
}

bool v_membership(const DigitString& d) {
  for (Rank k = 10; k <= d.rank(); k *= 10) {
    if (d[k - 1] != 0) return false;
  }
  return true;
}

DigitString v_max_digits(Rank k) {
  std::vector<BigInt> digits;
  digits.reserve(k);
  for (Rank i = 1; i <= k; ++i) {
    digits.push_back(BasicSequence::is_spike_rank(i) ? BigInt(0) : BigInt(i));
  }
  return DigitString(BasicSequence::arithmetic(2, 1), std::move(digits));
}

namespace {

DigitString v_sample(Rank k, std::mt19937_64& rng) {
  std::vector<BigInt> digits;
  digits.reserve(k);
  for (Rank i = 1; i <= k; ++i) {
    // Plain modulo keeps the stream identical across standard libraries.
    digits.push_back(BasicSequence::is_spike_rank(i) ? BigInt(0) : BigInt(rng() % (i + 1)));
  }
  return DigitString(BasicSequence::arithmetic(2, 1), std::move(digits));
}

bool increasing_between_spikes(const DimensionSeries& s) {
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    const Rank k = s.points[i].k;
    if (k <= 10 || BasicSequence::is_spike_rank(k)) continue;
    if (!(s.points[i].value > s.points[i - 1].value)) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<SpikePoint>& chain) {
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!(chain[i].value < chain[i - 1].value)) return false;
  }
  return true;
}

}  // namespace

Example1Report example1_report(const Example1Options& options) {
  if (options.k_max < 1) throw DomainError("example1 needs k_max >= 1");
  Example1Report r;
  r.options = options;
  const Rank k_max = options.k_max;
  const std::size_t window = std::min<std::size_t>(std::max<std::size_t>(options.window, 1), k_max);

  const SymbolModel xi = SymbolModel::example1(k_max, options.spike_form);
  const SymbolModel psi = SymbolModel::example1_psi(k_max);

  r.measure = dim_measure_series(xi, k_max);
  r.measure_liminf = liminf_estimate(r.measure, window);
  r.measure_increasing_between_spikes = increasing_between_spikes(r.measure);

  r.spectrum = dim_spectrum_series(psi, k_max);
  r.spectrum_liminf = liminf_estimate(r.spectrum, window);
  if (k_max >= 4) r.v_box = box_dimension_estimate(DigitSetSpec::example1_v(), k_max);

  r.ratios.push_back({"v_max_digits", ratio_series(xi, v_max_digits(k_max), k_max)});
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    r.ratios.push_back({"v_sample_" + std::to_string(i), ratio_series(xi, v_sample(k_max, rng), k_max)});
  }

  for (const auto& [label, series] : r.ratios) {
    for (const auto& p : series.points) {
      if (p.k >= 10 && BasicSequence::is_spike_rank(p.k)) {
        if (!r.spike_ratio_max || p.value > *r.spike_ratio_max) r.spike_ratio_max = p.value;
      }
    }
  }
  const auto& reference = r.ratios.front().series.points;
  unsigned s = 1;
  for (Rank k = 10; k <= k_max; k *= 10, ++s) {
    r.liminf_surrogates.push_back({s, k, reference[k - 1].value});
    r.limsup_surrogates.push_back({s, k - 1, reference[k - 2].value});
    if (k > k_max / 10) break;
  }
  r.surrogates_decreasing =
      strictly_decreasing(r.liminf_surrogates) && strictly_decreasing(r.limsup_surrogates);

  r.dp = dp_necessary_conditions(xi, k_max, options.tol, window);

  r.dim_v_estimate = r.spectrum_liminf.estimate;
  r.delta_trailing_max = 0;
  for (const auto& [label, series] : r.ratios) {
    for (std::size_t i = series.points.size() - window; i < series.points.size(); ++i) {
      r.delta_trailing_max = std::max(r.delta_trailing_max, series.points[i].value);
    }
  }
  r.image_dimension_bound = r.delta_trailing_max * r.dim_v_estimate;
  // b_k -> 0 along V is read off the spike subsequences; before the first
  // spike the ratio is identically 1 and nothing is predicted beyond the bound.
  r.predicts_zero_image_dimension = !r.liminf_surrogates.empty() && r.surrogates_decreasing &&
                                    r.spike_ratio_max && *r.spike_ratio_max < Real(1);
  r.predicted_image_dimension = r.predicts_zero_image_dimension ? Real(0) : r.image_dimension_bound;

  r.notes = {
      "dimension of V is about 1, while b_k -> 0 along V predicts dim_H(F_xi(V)) = delta * dim_H(V) = 0; "
      "the zero belongs to the image F_xi(V), not to V",
      "the image cylinder family F_xi(Phi(C)) is taken as faithful here, but the known sufficient "
      "conditions (bounded n_k, probabilities bounded below) fail for this model; flagged, not resolved",
  };
  return r;
}

}  // namespace cantordim
