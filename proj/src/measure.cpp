#include "cantordim/measure.hpp"

#include <algorithm>

namespace cantordim {

namespace mp = boost::multiprecision;

std::string to_string(RowRule rule) {
  switch (rule) {
    case RowRule::uniform: return "uniform";
    case RowRule::point_mass: return "point_mass";
    case RowRule::example1: return "example1";
    case RowRule::example1_psi: return "example1_psi";
    case RowRule::custom: return "custom";
  }
  return "?";
}

std::string to_string(SpikeForm form) {
  return form == SpikeForm::double_exponent ? "double_exponent" : "triple_exponent";
}

std::string to_string(SeriesFormula formula) {
  switch (formula) {
    case SeriesFormula::measure_entropy: return "measure_entropy";
    case SeriesFormula::spectrum_count: return "spectrum_count";
    case SeriesFormula::billingsley_ratio: return "billingsley_ratio";
  }
  return "?";
}

std::string to_string(DpVerdict verdict) {
  switch (verdict) {
    case DpVerdict::hypotheses_met_dp_iff_dim1: return "hypotheses_met_dp_iff_dim1";
    case DpVerdict::necessary_conditions_met_only: return "necessary_conditions_met_only";
    case DpVerdict::necessary_conditions_violated: return "necessary_conditions_violated";
  }
  return "?";
}

namespace {

void check_depth(const BasicSequence& seq, Rank depth_cap) {
  if (depth_cap < 1) throw DomainError("depth_cap must be >= 1");
  if (const auto cap = seq.max_rank(); cap && depth_cap > *cap) {
    throw DomainError("depth_cap exceeds the finite custom sequence");
  }
}

}  // namespace

SymbolModel SymbolModel::uniform(BasicSequence seq, Rank depth_cap) {
  check_depth(seq, depth_cap);
  SymbolModel m;
  m.seq_ = std::move(seq);
  m.rule_ = RowRule::uniform;
  m.depth_cap_ = depth_cap;
  return m;
}

SymbolModel SymbolModel::point_mass(BasicSequence seq, BigInt digit, Rank depth_cap) {
  check_depth(seq, depth_cap);
  if (digit < 0) throw DomainError("point mass digit must be non-negative");
  for (Rank k = 1; k <= depth_cap; ++k) {
    if (digit >= seq.term(k)) {
      throw DomainError("point mass digit " + digit.str() + " is out of range at rank " +
                        std::to_string(k));
    }
  }
  SymbolModel m;
  m.seq_ = std::move(seq);
  m.rule_ = RowRule::point_mass;
  m.depth_cap_ = depth_cap;
  m.point_digit_ = std::move(digit);
  return m;
}

SymbolModel SymbolModel::example1(Rank depth_cap, SpikeForm form) {
  // 1/p_{0k} = 10^(10^(10^k)) has a log beyond the MPFR exponent range once
  // 10^k exceeds ~1.3e18, so the triple form stops before rank 100.
  if (form == SpikeForm::triple_exponent && depth_cap >= 100) {
    throw DomainError("triple_exponent spike rows are representable only for depth_cap < 100");
  }
  SymbolModel m = uniform(BasicSequence::arithmetic(2, 1), depth_cap);
  m.rule_ = RowRule::example1;
  m.spike_form_ = form;
  return m;
}

SymbolModel SymbolModel::example1_psi(Rank depth_cap) {
  SymbolModel m = uniform(BasicSequence::arithmetic(2, 1), depth_cap);
  m.rule_ = RowRule::example1_psi;
  m.point_digit_ = 0;
  return m;
}

SymbolModel SymbolModel::custom(BasicSequence seq, std::vector<std::vector<Rational>> tables,
                                Rank depth_cap) {
  check_depth(seq, depth_cap);
  if (tables.empty()) throw DomainError("custom model needs at least one row");
  const Real tol = precision_epsilon();
  for (Rank k = 1; k <= depth_cap; ++k) {
    const auto& row = tables[(k - 1) % tables.size()];
    if (BigInt(row.size()) != seq.term(k)) {
      throw DomainError("custom row for rank " + std::to_string(k) + " has " +
                        std::to_string(row.size()) + " entries but n_k = " + seq.term(k).str());
    }
    if (k > tables.size()) continue;
    std::vector<LogReal> logs;
    logs.reserve(row.size());
    for (const auto& p : row) {
      if (p < 0) throw DomainError("negative probability in custom row " + std::to_string(k));
      logs.push_back(LogReal::from_rational(p));
    }
    const LogReal total = LogReal::sum(logs);
    if (total.is_zero() || mp::abs(total.log_magnitude()) > tol) {
      throw DomainError("custom row " + std::to_string(k) + " does not sum to 1");
    }
  }
  SymbolModel m;
  m.seq_ = std::move(seq);
  m.rule_ = RowRule::custom;
  m.depth_cap_ = depth_cap;
  m.tables_ = std::move(tables);
  return m;
}

void SymbolModel::check_rank(Rank k) const {
  if (k < 1 || k > depth_cap_) {
    throw DomainError("rank " + std::to_string(k) + " outside 1.." + std::to_string(depth_cap_));
  }
}

void SymbolModel::check_digit(Rank k, const BigInt& digit) const {
  check_rank(k);
  if (digit < 0 || digit >= seq_.term(k)) {
    throw DomainError("digit " + digit.str() + " out of range at rank " + std::to_string(k));
  }
}

RowKind SymbolModel::row_kind(Rank k) const {
  check_rank(k);
  switch (rule_) {
    case RowRule::uniform: return RowKind::uniform;
    case RowRule::point_mass: return RowKind::point_mass;
    case RowRule::example1:
      return BasicSequence::is_spike_rank(k) ? RowKind::spike : RowKind::uniform;
    case RowRule::example1_psi:
      return BasicSequence::is_spike_rank(k) ? RowKind::point_mass : RowKind::uniform;
    case RowRule::custom: return RowKind::table;
  }
  return RowKind::uniform;
}

Real SymbolModel::spike_log_p0(Rank k) const {
  // ln p_{0k} = -10^e ln 10 with e = k or e = 10^k.
  const Real e = spike_form_ == SpikeForm::double_exponent
                     ? Real(k)
                     : Real(mp::pow(Real(10), Real(k)));
  return -(mp::pow(Real(10), e) * ln10());
}

LogReal SymbolModel::probability(Rank k, const BigInt& digit) const {
  check_digit(k, digit);
  switch (row_kind(k)) {
    case RowKind::uniform: return LogReal::from_log(-seq_.log_term(k));
    case RowKind::point_mass: return digit == point_digit_ ? LogReal::one() : LogReal::zero();
    case RowKind::spike: {
      const Real log_p0 = spike_log_p0(k);
      if (digit == 0) return LogReal::from_log(log_p0);
      const Real p0 = mp::exp(log_p0);
      return LogReal::from_log(mp::log1p(Real(-p0)) - log_of(BigInt(seq_.term(k) - 1)));
    }
    case RowKind::table:
      return LogReal::from_rational(
          tables_[(k - 1) % tables_.size()][digit.convert_to<std::size_t>()]);
  }
  return LogReal::zero();
}

Real SymbolModel::cumulative_below(Rank k, const BigInt& digit) const {
  check_digit(k, digit);
  switch (row_kind(k)) {
    case RowKind::uniform: return to_real(Rational(digit, seq_.term(k)));
    case RowKind::point_mass: return digit > point_digit_ ? Real(1) : Real(0);
    case RowKind::spike: {
      if (digit == 0) return Real(0);
      const Real p0 = mp::exp(spike_log_p0(k));
      const BigInt others = seq_.term(k) - 1;
      return p0 + Real(digit - 1) * (Real(1) - p0) / Real(others);
    }
    case RowKind::table: {
      const auto& row = tables_[(k - 1) % tables_.size()];
      Rational s = 0;
      const auto upto = digit.convert_to<std::size_t>();
      for (std::size_t j = 0; j < upto; ++j) s += row[j];
      return to_real(s);
    }
  }
  return Real(0);
}

BigInt SymbolModel::positive_count(Rank k) const {
  check_rank(k);
  switch (row_kind(k)) {
    case RowKind::uniform:
    case RowKind::spike: return seq_.term(k);
    case RowKind::point_mass: return BigInt(1);
    case RowKind::table: {
      const auto& row = tables_[(k - 1) % tables_.size()];
      return BigInt(std::count_if(row.begin(), row.end(), [](const Rational& p) { return p > 0; }));
    }
  }
  return BigInt(0);
}

Real SymbolModel::log_positive_count(Rank k) const {
  // Full rows reuse ln n_k so that a fully supported spectrum gives ratio 1
  // without rounding drift.
  switch (row_kind(k)) {
    case RowKind::uniform:
    case RowKind::spike: return seq_.log_term(k);
    case RowKind::point_mass: return Real(0);
    case RowKind::table: {
      const BigInt count = positive_count(k);
      return count == seq_.term(k) ? seq_.log_term(k) : log_of(count);
    }
  }
  return Real(0);
}

Real SymbolModel::entropy(Rank k) const {
  check_rank(k);
  switch (row_kind(k)) {
    case RowKind::uniform: return seq_.log_term(k);
    case RowKind::point_mass: return Real(0);
    case RowKind::spike: {
      const Real log_p0 = spike_log_p0(k);
      // p0 ln p0 = -exp(ln p0 + ln|ln p0|); flushes to 0 below the exponent range.
      const Real p0_log_p0 =
          LogReal::from_log(log_p0 + mp::log(Real(-log_p0)), LogReal::Sign::negative).to_real();
      const Real p0 = mp::exp(log_p0);
      const Real rest = Real(1) - p0;
      const Real log_other = mp::log1p(Real(-p0)) - log_of(BigInt(seq_.term(k) - 1));
      return -(p0_log_p0 + rest * log_other);
    }
    case RowKind::table: {
      Real h = 0;
      for (const auto& p : tables_[(k - 1) % tables_.size()]) {
        if (p > 0) h -= to_real(p) * log_of(p);
      }
      return h;
    }
  }
  return Real(0);
}

LogReal SymbolModel::min_probability(Rank k) const {
  check_rank(k);
  switch (row_kind(k)) {
    case RowKind::uniform: return LogReal::from_log(-seq_.log_term(k));
    case RowKind::point_mass: return LogReal::zero();
    case RowKind::spike: {
      const LogReal p0 = probability(k, 0);
      const LogReal other = probability(k, 1);
      return p0 < other ? p0 : other;
    }
    case RowKind::table: {
      const auto& row = tables_[(k - 1) % tables_.size()];
      return LogReal::from_rational(*std::min_element(row.begin(), row.end()));
    }
  }
  return LogReal::zero();
}

LogReal SymbolModel::row_total(Rank k) const {
  check_rank(k);
  switch (row_kind(k)) {
    case RowKind::uniform:
      return LogReal::from_log(log_of(seq_.term(k))) * LogReal::from_log(-seq_.log_term(k));
    case RowKind::point_mass: return LogReal::one();
    case RowKind::spike: {
      const LogReal others = LogReal::from_log(log_of(BigInt(seq_.term(k) - 1))) * probability(k, 1);
      const std::vector<LogReal> parts{probability(k, 0), others};
      return LogReal::sum(parts);
    }
    case RowKind::table: {
      std::vector<LogReal> parts;
      for (const auto& p : tables_[(k - 1) % tables_.size()]) parts.push_back(LogReal::from_rational(p));
      return LogReal::sum(parts);
    }
  }
  return LogReal::zero();
}

LogReal cylinder_measure_log(const SymbolModel& m, const DigitString& d) {
  if (!(d.sequence() == m.sequence())) {
    throw DomainError("digit string and model use different basic sequences");
  }
  LogReal w = LogReal::one();
  for (Rank i = 0; i < d.rank(); ++i) {
    w *= m.probability(i + 1, d[i]);
    if (w.is_zero()) break;
  }
  return w;
}

Real cdf(const SymbolModel& m, const Rational& x, Rank k) {
  if (x < 0 || x > 1) throw DomainError("cdf needs 0 <= x <= 1");
  if (x == 1) return Real(1);
  if (k > m.depth_cap()) throw DomainError("cdf rank exceeds the model depth_cap");
  const DigitString digits = encode(x, m.sequence(), k);
  Real total = 0;
  LogReal weight = LogReal::one();
  for (Rank i = 1; i <= k && !weight.is_zero(); ++i) {
    const BigInt& digit = digits[i - 1];
    if (digit > 0) total += m.cumulative_below(i, digit) * weight.to_real();
    weight *= m.probability(i, digit);
  }
  return total;
}

Real entropy(const SymbolModel& m, Rank k) { return m.entropy(k); }

namespace {

void check_series_depth(const SymbolModel& m, Rank k_max) {
  if (k_max < 1) throw DomainError("series needs k_max >= 1");
  if (k_max > m.depth_cap()) throw DomainError("k_max exceeds the model depth_cap");
}

}  // namespace

DimensionSeries dim_measure_series(const SymbolModel& m, Rank k_max) {
  check_series_depth(m, k_max);
  DimensionSeries s;
  s.formula = SeriesFormula::measure_entropy;
  s.points.reserve(k_max);
  Real entropy_sum = 0;
  Real log_length = 0;
  Real precondition = 0;
  for (Rank k = 1; k <= k_max; ++k) {
    const Real log_n = m.sequence().log_term(k);
    if (k >= 2) {
      const Real r = log_n / log_length;
      precondition += r * r;
    }
    entropy_sum += m.entropy(k);
    log_length += log_n;
    s.points.push_back({k, entropy_sum / log_length});
  }
  s.precondition_partial = precondition;
  return s;
}

DimensionSeries dim_spectrum_series(const SymbolModel& m, Rank k_max) {
  check_series_depth(m, k_max);
  DimensionSeries s;
  s.formula = SeriesFormula::spectrum_count;
  s.points.reserve(k_max);
  Real count_sum = 0;
  Real log_length = 0;
  Real precondition = 0;
  for (Rank k = 1; k <= k_max; ++k) {
    const Real log_n = m.sequence().log_term(k);
    if (k >= 2) {
      const Real r = log_n / log_length;
      precondition += r * r;
    }
    count_sum += m.log_positive_count(k);
    log_length += log_n;
    s.points.push_back({k, count_sum / log_length});
  }
  s.precondition_partial = precondition;
  return s;
}

LiminfEstimate liminf_estimate(const DimensionSeries& s, std::size_t window) {
  if (window == 0 || window > s.points.size()) {
    throw DomainError("liminf window must be in 1.." + std::to_string(s.points.size()));
  }
  LiminfEstimate out;
  out.lower_envelope.resize(s.points.size());
  Real running = s.points.back().value;
  for (std::size_t i = s.points.size(); i-- > 0;) {
    if (s.points[i].value < running) running = s.points[i].value;
    out.lower_envelope[i] = {s.points[i].k, running};
  }
  out.estimate = out.lower_envelope[s.points.size() - window].value;
  return out;
}

DpReport dp_necessary_conditions(const SymbolModel& m, Rank k_max, double tol, std::size_t window) {
  check_series_depth(m, k_max);
  DpReport r;
  r.k_max = k_max;
  r.all_positive = true;
  bool first = true;
  for (Rank k = 1; k <= k_max; ++k) {
    const LogReal p = m.min_probability(k);
    if (first || p < r.min_probability) r.min_probability = p;
    first = false;
    if (p.is_zero() && r.all_positive) {
      r.all_positive = false;
      r.first_zero_rank = k;
    }
  }
  const DimensionSeries series = dim_measure_series(m, k_max);
  r.dim_estimate = liminf_estimate(series, std::min<std::size_t>(window, series.points.size())).estimate;
  r.dim_is_one = r.dim_estimate >= Real(1) - Real(tol);
  r.bounded = m.sequence().is_bounded();
  r.separated = !r.min_probability.is_zero();
  r.hypotheses_hold = r.bounded && r.separated;

  if (!r.all_positive || !r.dim_is_one) {
    r.verdict = DpVerdict::necessary_conditions_violated;
  } else if (r.hypotheses_hold) {
    r.verdict = DpVerdict::hypotheses_met_dp_iff_dim1;
  } else {
    r.verdict = DpVerdict::necessary_conditions_met_only;
  }
  return r;
}

}  // namespace cantordim
