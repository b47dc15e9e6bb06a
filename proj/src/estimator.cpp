#include "cantordim/estimator.hpp"

#include <algorithm>

namespace cantordim {

namespace mp = boost::multiprecision;

ExceptionRanks ExceptionRanks::listed(std::vector<Rank> ranks) {
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  if (!ranks.empty() && ranks.front() == 0) throw DomainError("exception ranks start at 1");
  ExceptionRanks r;
  r.kind = Kind::listed;
  r.ranks = std::move(ranks);
  return r;
}

ExceptionRanks ExceptionRanks::periodic(Rank every, Rank offset) {
  if (every == 0) throw DomainError("periodic exception ranks need every >= 1");
  if (offset >= every) throw DomainError("periodic offset must be below the period");
  ExceptionRanks r;
  r.kind = Kind::periodic;
  r.every = every;
  r.offset = offset;
  return r;
}

bool ExceptionRanks::contains(Rank k) const {
  switch (kind) {
    case Kind::powers_of_ten: return BasicSequence::is_spike_rank(k);
    case Kind::listed: return std::binary_search(ranks.begin(), ranks.end(), k);
    case Kind::periodic: return k % every == offset;
  }
  return false;
}

namespace {

std::vector<BigInt> normalized(std::vector<BigInt> digits) {
  if (digits.empty()) throw DomainError("admissible digit set must be non-empty");
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  if (digits.front() < 0) throw DomainError("admissible digits must be non-negative");
  return digits;
}

}  // namespace

DigitSetSpec DigitSetSpec::all(BasicSequence seq) {
  DigitSetSpec e;
  e.seq_ = std::move(seq);
  return e;
}

DigitSetSpec DigitSetSpec::with_exceptions(BasicSequence seq, ExceptionRanks ranks,
                                           std::vector<BigInt> digits_at_exception) {
  DigitSetSpec e;
  e.kind_ = Kind::exceptions;
  e.seq_ = std::move(seq);
  e.exceptions_ = std::move(ranks);
  e.exception_digits_ = normalized(std::move(digits_at_exception));
  return e;
}

DigitSetSpec DigitSetSpec::per_rank(BasicSequence seq, std::vector<std::vector<BigInt>> lists,
                                    bool cycle) {
  if (lists.empty()) throw DomainError("per-rank digit set needs at least one list");
  DigitSetSpec e;
  e.kind_ = Kind::per_rank;
  e.seq_ = std::move(seq);
  for (auto& l : lists) l = normalized(std::move(l));
  e.lists_ = std::move(lists);
  e.cycle_ = cycle;
  return e;
}

DigitSetSpec DigitSetSpec::example1_v() {
  return with_exceptions(BasicSequence::arithmetic(2, 1), ExceptionRanks::powers_of_ten(), {BigInt(0)});
}

std::optional<Rank> DigitSetSpec::max_rank() const {
  std::optional<Rank> cap = seq_.max_rank();
  if (kind_ == Kind::per_rank && !cycle_) {
    const Rank n = lists_.size();
    cap = cap ? std::min(*cap, n) : n;
  }
  return cap;
}

const std::vector<BigInt>* DigitSetSpec::restricted_digits(Rank k) const {
  if (k < 1) throw DomainError("rank must be >= 1");
  if (const auto cap = max_rank(); cap && k > *cap) {
    throw DomainError("rank " + std::to_string(k) + " beyond the digit set description");
  }
  const std::vector<BigInt>* digits = nullptr;
  switch (kind_) {
    case Kind::all: return nullptr;
    case Kind::exceptions:
      if (!exceptions_.contains(k)) return nullptr;
      digits = &exception_digits_;
      break;
    case Kind::per_rank: digits = &lists_[(k - 1) % lists_.size()]; break;
  }
  if (digits->back() >= seq_.term(k)) {
    throw DomainError("admissible digit " + digits->back().str() + " out of range at rank " +
                      std::to_string(k));
  }
  return digits;
}

BigInt DigitSetSpec::admissible_count(Rank k) const {
  const auto* digits = restricted_digits(k);
  return digits ? BigInt(digits->size()) : seq_.term(k);
}

Real DigitSetSpec::log_admissible_count(Rank k) const {
  const auto* digits = restricted_digits(k);
  if (!digits || BigInt(digits->size()) == seq_.term(k)) return seq_.log_term(k);
  return log_of(BigInt(digits->size()));
}

bool DigitSetSpec::admits(Rank k, const BigInt& digit) const {
  if (digit < 0 || digit >= seq_.term(k)) return false;
  const auto* digits = restricted_digits(k);
  return !digits || std::binary_search(digits->begin(), digits->end(), digit);
}

bool DigitSetSpec::contains(const DigitString& d) const {
  if (!(d.sequence() == seq_)) return false;
  for (Rank i = 0; i < d.rank(); ++i) {
    if (!admits(i + 1, d[i])) return false;
  }
  return true;
}

BigInt count_cylinders(const DigitSetSpec& e, Rank k) {
  if (k < 1) throw DomainError("count_cylinders needs k >= 1");
  BigInt n = 1;
  for (Rank i = 1; i <= k; ++i) n *= e.admissible_count(i);
  return n;
}

Real premeasure(const DigitSetSpec& e, const Real& alpha, Rank k) {
  if (k < 1) throw DomainError("premeasure needs k >= 1");
  if (alpha < 0 || alpha > 1) throw DomainError("premeasure needs alpha in [0, 1]");
  Real log_count = 0;
  Real log_length = 0;
  for (Rank i = 1; i <= k; ++i) {
    log_count += e.log_admissible_count(i);
    log_length += e.sequence().log_term(i);
  }
  return LogReal::from_log(log_count - alpha * log_length).to_real();
}

BoxEstimate box_dimension_estimate(const DigitSetSpec& e, Rank k_max) {
  if (k_max < 4) throw DomainError("box_dimension_estimate needs k_max >= 4");
  BoxEstimate out;
  std::vector<Real> xs;
  std::vector<Real> ys;
  Real x = 0;
  Real y = 0;
  for (Rank k = 1; k <= k_max; ++k) {
    x += e.sequence().log_term(k);
    y += e.log_admissible_count(k);
    out.ratios.push_back({k, y / x});
    if (k >= 2) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }

  const Real count(xs.size());
  Real mean_x = 0;
  Real mean_y = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= count;
  mean_y /= count;
  Real sxx = 0;
  Real sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (sxx == 0) throw DomainError("degenerate regression: all abscissae are equal");
  out.slope = sxy / sxx;
  out.intercept = mean_y - out.slope * mean_x;
  Real sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Real r = ys[i] - (out.intercept + out.slope * xs[i]);
    sse += r * r;
  }
  out.residual = mp::sqrt(Real(sse / count));

  out.faithful_family = e.sequence().is_bounded();
  if (!out.faithful_family) {
    const auto verdict = faithfulness_diagnostic(e.sequence(), std::max<Rank>(k_max, 3)).verdict;
    out.faithful_family = verdict == FaithfulnessVerdict::criterion_met_numerically;
  }
  return out;
}

}  // namespace cantordim
