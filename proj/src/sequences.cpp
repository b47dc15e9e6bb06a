#include "cantordim/sequences.hpp"

#include <algorithm>
#include <limits>

namespace cantordim {

namespace mp = boost::multiprecision;

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::constant: return "constant";
    case SequenceKind::arithmetic: return "arithmetic";
    case SequenceKind::geometric: return "geometric";
    case SequenceKind::counterexample: return "counterexample";
    case SequenceKind::custom: return "custom";
  }
  return "?";
}

std::string to_string(TailRule rule) {
  switch (rule) {
    case TailRule::none: return "none";
    case TailRule::repeat: return "repeat";
    case TailRule::arithmetic: return "arithmetic";
    case TailRule::geometric: return "geometric";
  }
  return "?";
}

std::string to_string(FaithfulnessVerdict verdict) {
  switch (verdict) {
    case FaithfulnessVerdict::criterion_met_numerically: return "criterion_met_numerically";
    case FaithfulnessVerdict::criterion_violated: return "criterion_violated";
    case FaithfulnessVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

BigInt ipow(const BigInt& base, Rank e) {
  BigInt r;
  mpz_pow_ui(r.backend().data(), base.backend().data(), static_cast<unsigned long>(e));
  return r;
}

// sum_{j=0}^{m-1} ln(a + j d) for a >= 1, d >= 1.
Real log_arithmetic_product(const BigInt& a, const BigInt& d, Rank m) {
  if (m == 0) return Real(0);
  if (m <= 64) {
    Real s = 0;
    BigInt t = a;
    for (Rank j = 0; j < m; ++j, t += d) s += log_of(t);
    return s;
  }
  const Real shift = Real(a) / Real(d);
  return Real(m) * log_of(d) + mp::lgamma(Real(shift + Real(m))) - mp::lgamma(shift);
}

}  // namespace

BasicSequence BasicSequence::constant(BigInt s) {
  if (s < 2) throw DomainError("constant sequence needs s >= 2");
  BasicSequence seq;
  seq.kind_ = SequenceKind::constant;
  seq.first_ = std::move(s);
  return seq;
}

BasicSequence BasicSequence::arithmetic(BigInt a1, BigInt d) {
  if (a1 < 2) throw DomainError("arithmetic sequence needs a1 >= 2");
  if (d < 1) throw DomainError("arithmetic sequence needs d >= 1");
  BasicSequence seq;
  seq.kind_ = SequenceKind::arithmetic;
  seq.first_ = std::move(a1);
  seq.step_ = std::move(d);
  return seq;
}

BasicSequence BasicSequence::geometric(BigInt b1, BigInt q) {
  if (b1 < 2) throw DomainError("geometric sequence needs b1 >= 2");
  if (q < 1) throw DomainError("geometric sequence needs q >= 1");
  BasicSequence seq;
  seq.kind_ = SequenceKind::geometric;
  seq.first_ = std::move(b1);
  seq.step_ = std::move(q);
  return seq;
}

BasicSequence BasicSequence::counterexample() {
  BasicSequence seq;
  seq.kind_ = SequenceKind::counterexample;
  seq.first_ = 2;
  return seq;
}

BasicSequence BasicSequence::custom(std::vector<BigInt> table, TailRule tail) {
  if (table.empty()) throw DomainError("custom sequence needs at least one term");
  for (const auto& t : table) {
    if (t < 2) throw DomainError("custom sequence term below 2");
  }
  BasicSequence seq;
  seq.kind_ = SequenceKind::custom;
  seq.tail_ = tail;
  const BigInt& last = table.back();
  switch (tail) {
    case TailRule::none:
    case TailRule::repeat: break;
    case TailRule::arithmetic: {
      if (table.size() < 2) throw DomainError("arithmetic tail needs two table terms");
      seq.step_ = last - table[table.size() - 2];
      if (seq.step_ < 0) throw DomainError("arithmetic tail would fall below 2");
      break;
    }
    case TailRule::geometric: {
      if (table.size() < 2) throw DomainError("geometric tail needs two table terms");
      const BigInt& prev = table[table.size() - 2];
      if (last % prev != 0) throw DomainError("geometric tail needs an integral last ratio");
      seq.step_ = last / prev;
      break;
    }
  }
  seq.table_ = std::make_shared<const std::vector<BigInt>>(std::move(table));
  return seq;
}

const std::vector<BigInt>& BasicSequence::table() const {
  static const std::vector<BigInt> empty;
  return table_ ? *table_ : empty;
}

std::optional<Rank> BasicSequence::max_rank() const {
  if (kind_ == SequenceKind::custom && tail_ == TailRule::none) return table_->size();
  return std::nullopt;
}

bool BasicSequence::is_spike_rank(Rank k) {
  if (k < 10) return false;
  while (k % 10 == 0) k /= 10;
  return k == 1;
}

void BasicSequence::check_rank(Rank k) const {
  if (k < 1) throw DomainError("rank must be >= 1");
  if (const auto cap = max_rank(); cap && k > *cap) {
    throw DomainError("rank " + std::to_string(k) + " exceeds the custom table length " +
                      std::to_string(*cap));
  }
}

BigInt BasicSequence::term(Rank k) const {
  check_rank(k);
  switch (kind_) {
    case SequenceKind::constant: return first_;
    case SequenceKind::arithmetic: return first_ + BigInt(k - 1) * step_;
    case SequenceKind::geometric: return first_ * ipow(step_, k - 1);
    case SequenceKind::counterexample: return is_spike_rank(k) ? pow10(k) : BigInt(2);
    case SequenceKind::custom: {
      const auto& t = *table_;
      if (k <= t.size()) return t[k - 1];
      const Rank extra = k - t.size();
      switch (tail_) {
        case TailRule::repeat: return t.back();
        case TailRule::arithmetic: return t.back() + BigInt(extra) * step_;
        case TailRule::geometric: return t.back() * ipow(step_, extra);
        case TailRule::none: break;
      }
      break;
    }
  }
  throw DomainError("unreachable rank");
}

Real BasicSequence::log_term(Rank k) const {
  check_rank(k);
  switch (kind_) {
    case SequenceKind::geometric:
      return log_of(first_) + Real(k - 1) * log_of(step_);
    case SequenceKind::counterexample:
      return is_spike_rank(k) ? Real(Real(k) * ln10()) : log_of(BigInt(2));
    case SequenceKind::custom:
      if (k > table_->size() && tail_ == TailRule::geometric) {
        return log_of(table_->back()) + Real(k - table_->size()) * log_of(step_);
      }
      return log_of(term(k));
    default:
      return log_of(term(k));
  }
}

Real BasicSequence::log_table_prefix(Rank k) const {
  Real s = 0;
  const Rank upto = std::min<Rank>(k, table_->size());
  for (Rank i = 0; i < upto; ++i) s += log_of((*table_)[i]);
  return s;
}

LogReal BasicSequence::log_prefix_product(Rank k) const {
  check_rank(k);
  Real total;
  switch (kind_) {
    case SequenceKind::constant:
      total = Real(k) * log_of(first_);
      break;
    case SequenceKind::arithmetic:
      total = log_arithmetic_product(first_, step_, k);
      break;
    case SequenceKind::geometric: {
      const BigInt half_square = BigInt(k) * BigInt(k - 1) / 2;
      total = Real(k) * log_of(first_) + Real(half_square) * log_of(step_);
      break;
    }
    case SequenceKind::counterexample: {
      // Spikes 10, 100, ..., 10^S contribute ln10 * (10 + ... + 10^S).
      Rank spikes = 0;
      for (Rank p = 10; p <= k; p *= 10) {
        ++spikes;
        if (p > std::numeric_limits<Rank>::max() / 10) break;
      }
      const BigInt spike_exponents = (pow10(spikes + 1) - 10) / 9;
      total = Real(k - spikes) * log_of(BigInt(2)) + Real(spike_exponents) * ln10();
      break;
    }
    case SequenceKind::custom: {
      total = log_table_prefix(k);
      if (k > table_->size()) {
        const Rank extra = k - table_->size();
        const BigInt& last = table_->back();
        switch (tail_) {
          case TailRule::repeat:
            total += Real(extra) * log_of(last);
            break;
          case TailRule::arithmetic:
            if (step_ == 0) {
              total += Real(extra) * log_of(last);
            } else {
              total += log_arithmetic_product(last + step_, step_, extra);
            }
            break;
          case TailRule::geometric: {
            const BigInt tri = BigInt(extra) * BigInt(extra + 1) / 2;
            total += Real(extra) * log_of(last) + Real(tri) * log_of(step_);
            break;
          }
          case TailRule::none: break;
        }
      }
      break;
    }
  }
  return LogReal::from_log(std::move(total));
}

bool BasicSequence::is_bounded() const {
  switch (kind_) {
    case SequenceKind::constant: return true;
    case SequenceKind::arithmetic: return false;
    case SequenceKind::geometric: return step_ == 1;
    case SequenceKind::counterexample: return false;
    case SequenceKind::custom:
      switch (tail_) {
        case TailRule::none:
        case TailRule::repeat: return true;
        case TailRule::arithmetic: return step_ == 0;
        case TailRule::geometric: return step_ == 1;
      }
  }
  return false;
}

bool BasicSequence::is_strictly_increasing(Rank k_max) const {
  if (k_max <= 1) return true;
  switch (kind_) {
    case SequenceKind::constant: return false;
    case SequenceKind::arithmetic: return true;
    case SequenceKind::geometric: return step_ > 1;
    case SequenceKind::counterexample: return false;
    case SequenceKind::custom: {
      const Rank upto = std::min<Rank>(k_max, table_->size());
      for (Rank i = 1; i < upto; ++i) {
        if ((*table_)[i] <= (*table_)[i - 1]) return false;
      }
      if (k_max <= table_->size()) return true;
      switch (tail_) {
        case TailRule::none: return true;
        case TailRule::repeat: return false;
        case TailRule::arithmetic: return step_ > 0;
        case TailRule::geometric: return step_ > 1;
      }
    }
  }
  return false;
}

bool BasicSequence::operator==(const BasicSequence& rhs) const {
  if (kind_ != rhs.kind_ || first_ != rhs.first_ || step_ != rhs.step_ || tail_ != rhs.tail_) {
    return false;
  }
  if (kind_ != SequenceKind::custom) return true;
  return *table_ == *rhs.table_;
}

Real faithfulness_ratio(const BasicSequence& seq, Rank k) {
  if (k < 2) throw DomainError("faithfulness ratio needs k >= 2");
  return seq.log_term(k) / seq.log_prefix_product(k - 1).log_magnitude();
}

LogFactorialBounds stirling_log_factorial(std::uint64_t m) {
  if (m < 1) throw DomainError("stirling_log_factorial needs m >= 1");
  const Real rm(m);
  const Real center = mp::log(Real(2) * pi() * rm) / 2 + rm * (mp::log(rm) - 1);
  const Real delta = Real(1) / (Real(12) * rm);
  return {center - delta, center + delta};
}

Real envelope_ratio_bound(const BigInt& b1, const BigInt& q, Rank k) {
  if (k < 4) throw DomainError("envelope bound needs k >= 4");
  if (b1 < 2 || q < 1) throw DomainError("envelope needs b1 >= 2 and q >= 1");
  const Real numerator = log_of(b1) + Real(k - 1) * log_of(q);
  return numerator / stirling_log_factorial(k - 2).lower;
}

namespace {

// Smallest integer c >= 1 with exponent * ln(c) >= target - tol.
BigInt smallest_integer_root(const Real& target, const Real& exponent) {
  if (target <= 0) return BigInt(1);
  const Real x = target / exponent;
  const Real tol = precision_epsilon() * (target > 1 ? target : Real(1));
  BigInt c(mp::floor(Real(mp::exp(x))));
  if (c < 1) c = 1;
  // Rounding can leave the floor one below or one above the exact root.
  if (c > 1 && exponent * log_of(BigInt(c - 1)) >= target - tol) --c;
  while (exponent * log_of(c) < target - tol) ++c;
  return c;
}

struct LowerFit {
  bool holds = false;
  BigInt a1, d;
};

LowerFit fit_arithmetic_minorant(const BasicSequence& seq, Rank k_max) {
  LowerFit fit;
  const Real margin = Real(1) / 1000000;
  // d* = min_{k>=2} floor((n_k - 2) / (k - 1)); with a1 = 2 this is the
  // steepest feasible slope.
  std::optional<BigInt> d;
  for (Rank k = 2; k <= k_max; ++k) {
    if (d && seq.log_term(k) > log_of(BigInt(*d * BigInt(k - 1) + 2)) + margin) continue;
    const BigInt n = seq.term(k);
    const BigInt candidate = (n - 2) / BigInt(k - 1);
    if (!d || candidate < *d) d = candidate;
    if (*d < 1) return fit;
  }
  if (!d) d = BigInt(1);  // k_max == 1
  BigInt a1 = seq.term(1);
  for (Rank k = 2; k <= k_max; ++k) {
    const BigInt offset = *d * BigInt(k - 1);
    if (seq.log_term(k) > log_of(BigInt(a1 + offset)) + margin) continue;
    const BigInt candidate = seq.term(k) - offset;
    if (candidate < a1) a1 = candidate;
  }
  if (a1 < 2) return fit;
  fit.holds = true;
  fit.a1 = a1;
  fit.d = *d;
  return fit;
}

}  // namespace

FaithfulnessReport faithfulness_diagnostic(const BasicSequence& seq, Rank k_max,
                                           const FaithfulnessThresholds& thresholds,
                                           const std::optional<GeometricEnvelope>& envelope) {
  if (k_max < 3) throw DomainError("faithfulness diagnostic needs k_max >= 3");
  if (const auto cap = seq.max_rank(); cap && k_max > *cap) {
    throw DomainError("k_max exceeds the finite custom table");
  }

  FaithfulnessReport report;
  report.k_max = k_max;
  report.thresholds = thresholds;
  report.ratios.reserve(k_max - 1);

  const Real met_tol(thresholds.met_tol);
  const Real violation(thresholds.violation_threshold);

  std::vector<Real> logs;
  logs.reserve(k_max);
  Real prefix = 0;
  Real square_sum = 0;
  std::vector<int> witness_decades;
  Rank decade_top = 10;
  int decade = 0;
  Real decade_max = 0;
  bool decade_open = false;

  for (Rank k = 1; k <= k_max; ++k) {
    logs.push_back(seq.log_term(k));
    if (k >= 2) {
      Real r = logs.back() / prefix;
      if (k > decade_top) {
        report.decade_maxima.push_back(decade_max);
        decade_open = false;
        while (k > decade_top) {
          decade_top *= 10;
          ++decade;
        }
      }
      if (!decade_open || r > decade_max) decade_max = r;
      decade_open = true;
      square_sum += r * r;
      if (k >= 3 && r >= violation && r > report.ratios.back().second) {
        report.witnesses.push_back(k);
        if (witness_decades.empty() || witness_decades.back() != decade) {
          witness_decades.push_back(decade);
        }
      }
      report.ratios.emplace_back(k, std::move(r));
    }
    prefix += logs.back();
  }
  if (decade_open) report.decade_maxima.push_back(decade_max);
  report.square_summable_partial = square_sum;

  const auto& maxima = report.decade_maxima;
  bool decreasing = maxima.size() >= 2;
  for (std::size_t i = 1; decreasing && i < maxima.size(); ++i) {
    decreasing = maxima[i] < maxima[i - 1];
  }
  // Rising spikes in two decades outrank a quiet trailing decade, which may
  // simply stop short of the next spike.
  if (witness_decades.size() >= 2) {
    report.verdict = FaithfulnessVerdict::criterion_violated;
  } else if (decreasing && maxima.back() < met_tol) {
    report.verdict = FaithfulnessVerdict::criterion_met_numerically;
  }

  // Arithmetic minorant / geometric majorant.
  EnvelopeCheck& env = report.envelope;
  const Real tol = precision_epsilon();
  const LowerFit lower = fit_arithmetic_minorant(seq, k_max);
  env.lower_holds = lower.holds;
  env.a1 = lower.a1;
  env.d = lower.d;
  if (envelope) {
    if (envelope->b1 < 2 || envelope->q < 1) {
      throw DomainError("geometric envelope needs b1 >= 2 and q >= 1");
    }
    env.upper_supplied = true;
    env.b1 = envelope->b1;
    env.q = envelope->q;
    const Real lb1 = log_of(env.b1);
    const Real lq = log_of(env.q);
    env.upper_holds = true;
    for (Rank k = 1; k <= k_max && env.upper_holds; ++k) {
      const Real bound = lb1 + Real(k - 1) * lq;
      env.upper_holds = bound >= logs[k - 1] - tol * (bound > 1 ? bound : Real(1));
    }
  } else {
    env.b1 = mp::max(BigInt(2), seq.term(1));
    const Real lb1 = log_of(env.b1);
    BigInt q = 1;
    for (Rank k = 2; k <= k_max; ++k) {
      const BigInt qk = smallest_integer_root(Real(logs[k - 1] - lb1), Real(k - 1));
      if (qk > q) q = qk;
    }
    env.q = q;
    env.upper_holds = true;
  }
  env.degenerate_q = env.q == 1;
  env.holds = env.lower_holds && env.upper_holds;

  if (env.upper_holds && k_max >= 4) {
    env.bound_dominates = true;
    env.bounds.reserve(k_max - 3);
    for (Rank k = 4; k <= k_max; ++k) {
      Real b = envelope_ratio_bound(env.b1, env.q, k);
      if (b < report.ratios[k - 2].second) env.bound_dominates = false;
      env.bounds.emplace_back(k, std::move(b));
    }
    Rank from = k_max;
    while (from > 4 && env.bounds[from - 5].second > env.bounds[from - 4].second) --from;
    if (from < k_max) env.bound_decreasing_from = from;
  }

  // Corollary: strictly increasing and n_k <= q^k.
  SubgeometricCheck& sub = report.subgeometric;
  BigInt q = 1;
  for (Rank k = 1; k <= k_max; ++k) {
    const BigInt qk = smallest_integer_root(logs[k - 1], Real(k));
    if (qk > q) q = qk;
  }
  sub.q = q;
  sub.holds = true;
  sub.strictly_increasing = seq.is_strictly_increasing(k_max);
  sub.corollary_applies = sub.holds && sub.strictly_increasing;

  return report;
}

}  // namespace cantordim
