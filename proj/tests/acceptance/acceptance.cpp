// Acceptance gate: one PASS/FAIL line per criterion. Every tolerance and
// budget is pinned below. `acceptance --only N` runs a single criterion.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cantordim/billingsley.hpp"
#include "cantordim/cli.hpp"
#include "cantordim/codec.hpp"
#include "cantordim/estimator.hpp"
#include "cantordim/measure.hpp"
#include "cantordim/sequences.hpp"
#include "../oracles.hpp"

using namespace cantordim;

namespace {

constexpr double kBoundedBudgetSeconds = 1.0;
constexpr double kCounterexampleBudgetSeconds = 5.0;
constexpr double kExample1BudgetSeconds = 60.0;
const char* const kCounterexampleTol = "1e-12";
const char* const kCantorTol = "1e-12";
const char* const kSlopeTol = "1e-9";
const char* const kFaithfulTarget = "0.05";
const char* const kDimTarget = "0.95";
const char* const kSpikeCeiling = "1e-8";
constexpr int kImageIdentityDigitsSlack = 10;  // tolerance 10^-(precision - 10)
constexpr int kCodecTrials = 10000;
constexpr int kImageTrials = 1000;
constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(const Real& x) { return x.str(6, std::ios_base::scientific); }

Verdict bounded_faithfulness() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto seq = BasicSequence::constant(2);
  Real worst = 0;
  for (Rank k = 2; k <= 1000; ++k) {
    worst = std::max(worst, Real(abs(faithfulness_ratio(seq, k) - Real(1) / Real(k - 1))));
  }
  const auto verdict = faithfulness_diagnostic(seq, 1000).verdict;
  const double elapsed = seconds_since(t0);
  const bool pass = worst <= precision_epsilon() && verdict == FaithfulnessVerdict::criterion_met_numerically &&
                    elapsed < kBoundedBudgetSeconds;
  return {pass, "max |r_k - 1/(k-1)| = " + sci(worst) + ", verdict " + to_string(verdict) + ", " +
                    std::to_string(elapsed) + " s"};
}

Verdict counterexample_violation() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto seq = BasicSequence::counterexample();
  const Real closed = Real(10) * ln10() / (Real(9) * log_of(BigInt(2)));
  const Real direct = oracle::ln(seq.term(10)) / oracle::ln(oracle::product([&](Rank i) { return seq.term(i); }, 9));
  const Real r10 = faithfulness_ratio(seq, 10);
  bool spikes = true;
  std::string spike_values;
  for (Rank k : {10ull, 100ull, 1000ull}) {
    const Real r = faithfulness_ratio(seq, k);
    spikes = spikes && r > 1;
    spike_values += " r_" + std::to_string(k) + "=" + sci(r);
  }
  const auto verdict = faithfulness_diagnostic(seq, 1000).verdict;
  const double elapsed = seconds_since(t0);
  const Real gap = abs(r10 - direct);
  const bool pass = gap <= Real(kCounterexampleTol) && abs(r10 - closed) <= Real(kCounterexampleTol) && spikes &&
                    verdict == FaithfulnessVerdict::criterion_violated && elapsed < kCounterexampleBudgetSeconds;
  return {pass, "|r_10 - direct| = " + sci(gap) + ";" + spike_values + "; verdict " + to_string(verdict) + ", " +
                    std::to_string(elapsed) + " s"};
}

Verdict envelope_bound() {
  const auto seq = BasicSequence::arithmetic(2, 1);
  const BigInt b1 = 2;
  const BigInt q = 3;
  bool dominates = true;
  Rank first_failure = 0;
  for (Rank k = 10; k <= 1000; ++k) {
    if (envelope_ratio_bound(b1, q, k) < faithfulness_ratio(seq, k)) {
      dominates = false;
      first_failure = k;
      break;
    }
  }
  const Real bound200 = envelope_ratio_bound(b1, q, 200);
  const Real ratio200 = faithfulness_ratio(seq, 200);
  const Real target(kFaithfulTarget);
  const bool pass = dominates && bound200 < target && ratio200 < target;
  std::string detail = dominates ? "bound >= r_k on [10, 1000]" : "bound < r_k at k=" + std::to_string(first_failure);
  detail += "; at k=200 bound = " + sci(bound200) + ", r_k = " + sci(ratio200) + " (target < " + kFaithfulTarget + ")";
  return {pass, detail};
}

Verdict stirling_bracket() {
  for (std::uint64_t m = 1; m <= 500; ++m) {
    const auto b = stirling_log_factorial(m);
    const Real exact = oracle::ln(oracle::factorial(m));
    if (!(b.lower <= exact && exact <= b.upper)) return {false, "ln(m!) escapes the bracket at m=" + std::to_string(m)};
  }
  return {true, "ln(m!) inside the bracket for 1 <= m <= 500"};
}

bool tiles(const BasicSequence& seq, Rank depth) {
  std::vector<Cylinder> level = {cylinder(DigitString(seq, {}))};
  for (Rank k = 1; k <= depth; ++k) {
    std::vector<Cylinder> next;
    for (const auto& c : level) {
      auto kids = children(c);
      next.insert(next.end(), std::make_move_iterator(kids.begin()), std::make_move_iterator(kids.end()));
    }
    level = std::move(next);
    Rational total = 0;
    Rational cursor = 0;
    for (const auto& c : level) {
      if (c.left != cursor) return false;
      cursor = c.right;
      total += c.length;
    }
    if (cursor != 1 || total != 1) return false;
  }
  return true;
}

Verdict codec_roundtrip() {
  std::mt19937_64 rng(kSeed);
  const std::vector<BasicSequence> seqs = {BasicSequence::constant(3), BasicSequence::arithmetic(2, 1),
                                           BasicSequence::geometric(2, 3)};
  int failures = 0;
  for (int trial = 0; trial < kCodecTrials; ++trial) {
    const auto& seq = seqs[trial % seqs.size()];
    const Rank k = 1 + rng() % 16;
    const BigInt den = oracle::product([&](Rank i) { return seq.term(i); }, k);
    BigInt num = 0;
    for (int limb = 0; limb < 4; ++limb) num = (num << 64) + BigInt(rng());
    num %= den;
    const Rational x(num, den);
    const DigitString d = encode(x, seq, k);
    if (decode(d) != x || encode(x, seq, k + 3).prefix(k) != d) ++failures;
  }
  // Full tiling for every rank up to 8; the geometric sequence stops where
  // its cylinder count (2^(k(k+1)/2) for b1 = q = 2) stays enumerable.
  const bool tiled = tiles(BasicSequence::constant(3), 8) && tiles(BasicSequence::arithmetic(2, 1), 8) &&
                     tiles(BasicSequence::geometric(2, 2), 4);
  return {failures == 0 && tiled, std::to_string(kCodecTrials) + " roundtrips, " + std::to_string(failures) +
                                      " failures; rank-k cylinders tile [0,1]: " + (tiled ? "yes" : "no") +
                                      " (constant 3 and k+1 to rank 8, geometric 2*2^(k-1) to rank 4)"};
}

Verdict cantor_cross_check() {
  const auto seq = BasicSequence::constant(3);
  const auto m = SymbolModel::custom(seq, {{Rational(1, 2), 0, Rational(1, 2)}});
  const Real expected = log_of(BigInt(2)) / log_of(BigInt(3));
  Real worst = 0;
  for (const auto& p : dim_spectrum_series(m, 100).points) worst = std::max(worst, Real(abs(p.value - expected)));
  const auto box = box_dimension_estimate(DigitSetSpec::per_rank(seq, {{0, 2}}, true), 12);
  const Real slope_gap = abs(box.slope - expected);
  const bool pass = worst <= Real(kCantorTol) && slope_gap <= Real(kSlopeTol) &&
                    expected.str(7).starts_with("0.630929");
  return {pass, "max |d_k - ln2/ln3| = " + sci(worst) + ", |slope - ln2/ln3| = " + sci(slope_gap)};
}

Verdict uniform_measure() {
  const std::vector<BasicSequence> seqs = {BasicSequence::constant(2), BasicSequence::arithmetic(2, 1),
                                           BasicSequence::geometric(2, 2), BasicSequence::counterexample(),
                                           BasicSequence::custom({2, 3, 7}, TailRule::repeat)};
  Real worst = 0;
  for (const auto& seq : seqs) {
    for (const auto& p : dim_measure_series(SymbolModel::uniform(seq, 200), 200).points) {
      worst = std::max(worst, Real(abs(p.value - 1)));
    }
  }
  return {worst <= precision_epsilon(), "max |d_k - 1| over five sequence kinds = " + sci(worst)};
}

Verdict image_length_identity() {
  struct Case {
    SymbolModel model;
    oracle::Probability p;
  };
  const std::vector<std::vector<Rational>> rows = {{Rational(1, 10), Rational(2, 5), Rational(1, 4), Rational(1, 4)},
                                                   {Rational(1, 3), 0, Rational(1, 6), Rational(1, 2)}};
  const std::vector<Case> cases = {
      {SymbolModel::custom(BasicSequence::constant(3), {{Rational(1, 2), 0, Rational(1, 2)}}),
       [](Rank, const BigInt& j) { return j == 1 ? Rational(0) : Rational(1, 2); }},
      {SymbolModel::custom(BasicSequence::constant(4), rows),
       [rows](Rank k, const BigInt& j) { return rows[(k - 1) % 2][j.convert_to<std::size_t>()]; }},
      {SymbolModel::uniform(BasicSequence::arithmetic(2, 1)),
       [](Rank k, const BigInt&) { return Rational(BigInt(1), BigInt(k + 1)); }},
  };
  const Real tol = boost::multiprecision::pow(Real(10), -static_cast<int>(working_precision()) + kImageIdentityDigitsSlack);
  std::mt19937_64 rng(kSeed + 8);
  Real worst = 0;
  Real worst_oracle = 0;
  for (int trial = 0; trial < kImageTrials; ++trial) {
    const Case& c = cases[trial % cases.size()];
    const auto& seq = c.model.sequence();
    const Rank k = 1 + rng() % 8;
    std::vector<BigInt> digits;
    for (Rank i = 1; i <= k; ++i) digits.push_back(BigInt(rng() % seq.term(i).convert_to<std::uint64_t>()));
    const DigitString d(seq, digits);
    const Cylinder cyl = cylinder(d);
    const Real image = cdf(c.model, cyl.right, k) - cdf(c.model, cyl.left, k);
    worst = std::max(worst, Real(abs(image - to_real(oracle::cylinder_mass(c.p, digits)))));
    if (k <= 4) {
      const Rational brute = oracle::cdf_by_enumeration([&](Rank i) { return seq.term(i); }, c.p, digits);
      worst_oracle = std::max(worst_oracle, Real(abs(cdf(c.model, cyl.left, k) - to_real(brute))));
    }
  }
  return {worst <= tol && worst_oracle <= tol, "max |F(right) - F(left) - mu| = " + sci(worst) +
                                                   ", max |F - enumeration| = " + sci(worst_oracle) +
                                                   " (tolerance " + sci(tol) + ")"};
}

Verdict example1_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const Example1Report r = example1_report();
  const auto& v = r.ratios.front().series.points;
  const double elapsed = seconds_since(t0);
  const bool a = r.measure_liminf.estimate >= Real(kDimTarget) && r.measure_increasing_between_spikes;
  const bool b = r.spectrum_liminf.estimate >= Real(kDimTarget);
  const bool c = v[8].value == 1 && v[8].flag == RatioFlag::ok && v[9].value < Real(kSpikeCeiling);
  const bool d = r.dp.verdict == DpVerdict::necessary_conditions_met_only;
  std::ostringstream detail;
  detail << "(a) dim mu " << r.measure_liminf.estimate.str(6) << (r.measure_increasing_between_spikes ? " rising" : " NOT rising")
         << "; (b) dim V " << r.spectrum_liminf.estimate.str(6) << "; (c) b_9 = " << v[8].value.str(6)
         << ", b_10 = " << sci(v[9].value) << "; (d) " << to_string(r.dp.verdict) << "; " << elapsed << " s";
  return {a && b && c && d && elapsed < kExample1BudgetSeconds, detail.str()};
}

Verdict determinism() {
  auto once = [] {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"example1", "--k-max", "100", "--seed", "7"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto first = once();
  const auto second = once();
  const bool pass = first.first == 0 && second.first == 0 && first.second == second.second && !first.second.empty();
  return {pass, std::to_string(first.second.size()) + " bytes, identical: " +
                    (first.second == second.second ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {1, "bounded sequence is faithful", bounded_faithfulness},
      {2, "counterexample violates the criterion", counterexample_violation},
      {3, "envelope bound dominates and decays", envelope_bound},
      {4, "Stirling bracket", stirling_bracket},
      {5, "codec roundtrip and tiling", codec_roundtrip},
      {6, "classical Cantor set", cantor_cross_check},
      {7, "uniform model has dimension 1", uniform_measure},
      {8, "image-length identity", image_length_identity},
      {9, "k+1 counterexample reproduction", example1_reproduction},
      {10, "deterministic reports", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::cout << "AC" << c.id << (v.pass ? " PASS " : " FAIL ") << c.name << ": " << v.detail << '\n';
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
