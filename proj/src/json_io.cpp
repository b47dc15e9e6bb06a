#include "cantordim/json_io.hpp"

#include <string>

namespace cantordim::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) bad(std::string(where) + " needs \"" + key + "\"");
  return j.at(key);
}

// Descriptor values that the modules reject are configuration errors here.
template <class F>
auto guarded(const char* where, F&& build) {
  try {
    return build();
  } catch (const DomainError& e) {
    bad(std::string(where) + ": " + e.what());
  }
}

Json real(const Real& x) { return format(x); }

Json points(const std::vector<SeriesPoint>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(Json::array({p.k, real(p.value)}));
  return out;
}

Json pairs(const std::vector<std::pair<Rank, Real>>& ps) {
  Json out = Json::array();
  for (const auto& [k, v] : ps) out.push_back(Json::array({k, real(v)}));
  return out;
}

Json log_real(const LogReal& x) {
  if (x.is_zero()) return Json{{"zero", true}};
  return Json{{"zero", false}, {"ln", real(x.log_magnitude())}};
}

Json big_list(std::span<const BigInt> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

TailRule parse_tail(const std::string& s) {
  if (s == "none") return TailRule::none;
  if (s == "repeat") return TailRule::repeat;
  if (s == "arithmetic") return TailRule::arithmetic;
  if (s == "geometric") return TailRule::geometric;
  bad("unknown tail rule \"" + s + "\"");
}

}  // namespace

BigInt parse_integer(const Json& j) {
  try {
    if (j.is_number_integer()) return BigInt(j.dump());
    if (j.is_string()) return parse_bigint(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(std::string("bad integer: ") + e.what());
  }
  bad("expected an integer, got " + j.dump());
}

Rational parse_number(const Json& j) {
  try {
    if (j.is_number()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(std::string("bad number: ") + e.what());
  }
  bad("expected a number, got " + j.dump());
}

std::vector<BigInt> parse_digits(const Json& j) {
  if (!j.is_array()) bad("digits must be a JSON array");
  std::vector<BigInt> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(parse_integer(x));
  return out;
}

BasicSequence parse_sequence(const Json& j) {
  if (!j.is_object()) bad("sequence descriptor must be a JSON object");
  const auto kind = require(j, "kind", "sequence descriptor").get<std::string>();
  return guarded("sequence descriptor", [&] {
    if (kind == "constant") return BasicSequence::constant(parse_integer(require(j, "s", "constant")));
    if (kind == "arithmetic") {
      return BasicSequence::arithmetic(parse_integer(require(j, "a1", "arithmetic")),
                                       parse_integer(require(j, "d", "arithmetic")));
    }
    if (kind == "geometric") {
      return BasicSequence::geometric(parse_integer(require(j, "b1", "geometric")),
                                      parse_integer(require(j, "q", "geometric")));
    }
    if (kind == "counterexample") return BasicSequence::counterexample();
    if (kind == "custom") {
      const TailRule tail = j.contains("tail") ? parse_tail(j.at("tail").get<std::string>()) : TailRule::none;
      return BasicSequence::custom(parse_digits(require(j, "terms", "custom")), tail);
    }
    bad("unknown sequence kind \"" + kind + "\"");
  });
}

Json to_json(const BasicSequence& seq) {
  Json j{{"kind", to_string(seq.kind())}};
  switch (seq.kind()) {
    case SequenceKind::constant: j["s"] = seq.first().str(); break;
    case SequenceKind::arithmetic:
      j["a1"] = seq.first().str();
      j["d"] = seq.step().str();
      break;
    case SequenceKind::geometric:
      j["b1"] = seq.first().str();
      j["q"] = seq.step().str();
      break;
    case SequenceKind::counterexample: break;
    case SequenceKind::custom:
      j["terms"] = big_list(seq.table());
      j["tail"] = to_string(seq.tail());
      break;
  }
  return j;
}

SymbolModel parse_model(const std::optional<BasicSequence>& seq, const Json& rows,
                        const ModelOptions& options) {
  const Rank cap = options.depth_cap.value_or(kDefaultDepthCap);
  auto need_seq = [&]() -> const BasicSequence& {
    if (!seq) bad("these rows need a sequence descriptor");
    return *seq;
  };
  auto need_example1_seq = [&] {
    if (seq && !(*seq == BasicSequence::arithmetic(2, 1))) {
      bad("example1 rows need the sequence n_k = k + 1 (arithmetic a1 = 2, d = 1)");
    }
  };
  return guarded("model descriptor", [&] {
    if (rows.is_string()) {
      const auto s = rows.get<std::string>();
      if (s == "uniform") return SymbolModel::uniform(need_seq(), cap);
      if (s == "example1") {
        need_example1_seq();
        return SymbolModel::example1(cap, options.spike_form);
      }
      if (s == "example1_psi") {
        need_example1_seq();
        return SymbolModel::example1_psi(cap);
      }
      if (s.starts_with("point_mass:")) {
        BigInt digit;
        try {
          digit = parse_bigint(s.substr(11));
        } catch (const std::exception&) {
          bad("bad point_mass digit in \"" + s + "\"");
        }
        return SymbolModel::point_mass(need_seq(), digit, cap);
      }
      bad("unknown rows \"" + s + "\"");
    }
    if (rows.is_object() && rows.contains("custom")) {
      const Json& t = rows.at("custom");
      if (!t.is_array()) bad("custom rows must be an array of arrays");
      std::vector<std::vector<Rational>> tables;
      for (const auto& row : t) {
        if (!row.is_array()) bad("custom rows must be an array of arrays");
        std::vector<Rational> r;
        for (const auto& p : row) r.push_back(parse_number(p));
        tables.push_back(std::move(r));
      }
      return SymbolModel::custom(need_seq(), std::move(tables), cap);
    }
    bad("rows must be a string or {\"custom\": [[...]]}");
  });
}

SymbolModel parse_model_descriptor(const Json& j, const ModelOptions& defaults) {
  if (!j.is_object()) bad("model descriptor must be a JSON object");
  ModelOptions options = defaults;
  if (j.contains("depth_cap")) {
    const BigInt cap = parse_integer(j.at("depth_cap"));
    if (cap < 1) bad("depth_cap must be >= 1");
    options.depth_cap = cap.convert_to<Rank>();
  }
  if (j.contains("spike_form")) {
    const auto f = j.at("spike_form").get<std::string>();
    if (f == "double_exponent") options.spike_form = SpikeForm::double_exponent;
    else if (f == "triple_exponent") options.spike_form = SpikeForm::triple_exponent;
    else bad("unknown spike_form \"" + f + "\"");
  }
  std::optional<BasicSequence> seq;
  if (j.contains("sequence")) seq = parse_sequence(j.at("sequence"));
  return parse_model(seq, require(j, "rows", "model descriptor"), options);
}

Json to_json(const SymbolModel& m) {
  Json rows;
  switch (m.rule()) {
    case RowRule::uniform:
    case RowRule::example1:
    case RowRule::example1_psi: rows = to_string(m.rule()); break;
    case RowRule::point_mass: rows = "point_mass:" + m.point_digit().str(); break;
    case RowRule::custom: {
      Json t = Json::array();
      for (const auto& row : m.tables()) {
        Json r = Json::array();
        for (const auto& p : row) r.push_back(to_json(p));
        t.push_back(std::move(r));
      }
      rows = Json{{"custom", std::move(t)}};
      break;
    }
  }
  Json j{{"sequence", to_json(m.sequence())}, {"rows", std::move(rows)}, {"depth_cap", m.depth_cap()}};
  if (m.rule() == RowRule::example1) j["spike_form"] = to_string(m.spike_form());
  return j;
}

DigitSetSpec parse_set(const std::optional<BasicSequence>& seq_flag, const Json& j) {
  if (!j.is_object()) bad("set descriptor must be a JSON object");
  const Json& adm = require(j, "admissible", "set descriptor");
  if (adm == "example1_v") return DigitSetSpec::example1_v();
  std::optional<BasicSequence> seq = seq_flag;
  if (j.contains("sequence")) seq = parse_sequence(j.at("sequence"));
  if (!seq) bad("set descriptor needs a sequence");

  return guarded("set descriptor", [&] {
    if (adm == "all") return DigitSetSpec::all(*seq);
    if (adm.is_object()) {
      const Json& rule = require(adm, "except_ranks", "admissible");
      ExceptionRanks ranks;
      if (rule == "powers_of_10") {
        ranks = ExceptionRanks::powers_of_ten();
      } else if (rule.is_array()) {
        std::vector<Rank> ks;
        for (const auto& k : rule) ks.push_back(parse_integer(k).convert_to<Rank>());
        ranks = ExceptionRanks::listed(std::move(ks));
      } else if (rule.is_object()) {
        ranks = ExceptionRanks::periodic(parse_integer(require(rule, "every", "except_ranks")).convert_to<Rank>(),
                                         rule.contains("offset") ? parse_integer(rule.at("offset")).convert_to<Rank>() : 0);
      } else {
        bad("except_ranks must be \"powers_of_10\", a list of ranks or {\"every\", \"offset\"}");
      }
      return DigitSetSpec::with_exceptions(*seq, std::move(ranks),
                                           parse_digits(require(adm, "digits_at_exception", "admissible")));
    }
    if (adm.is_array()) {
      std::vector<std::vector<BigInt>> lists;
      for (const auto& l : adm) lists.push_back(parse_digits(l));
      const std::string tail = j.value("tail", std::string("none"));
      if (tail != "none" && tail != "cycle") bad("set tail must be \"none\" or \"cycle\"");
      return DigitSetSpec::per_rank(*seq, std::move(lists), tail == "cycle");
    }
    bad("admissible must be \"all\", \"example1_v\", an exception rule or per-rank lists");
  });
}

Json to_json(const DigitSetSpec& e) {
  Json j{{"sequence", to_json(e.sequence())}};
  switch (e.kind()) {
    case DigitSetSpec::Kind::all: j["admissible"] = "all"; break;
    case DigitSetSpec::Kind::exceptions: {
      const auto& r = e.exception_ranks();
      Json rule;
      switch (r.kind) {
        case ExceptionRanks::Kind::powers_of_ten: rule = "powers_of_10"; break;
        case ExceptionRanks::Kind::listed: rule = r.ranks; break;
        case ExceptionRanks::Kind::periodic: rule = Json{{"every", r.every}, {"offset", r.offset}}; break;
      }
      j["admissible"] = Json{{"except_ranks", std::move(rule)},
                             {"digits_at_exception", big_list(e.exception_digits())}};
      break;
    }
    case DigitSetSpec::Kind::per_rank: {
      Json lists = Json::array();
      for (const auto& l : e.lists()) lists.push_back(big_list(l));
      j["admissible"] = std::move(lists);
      j["tail"] = e.cycles() ? "cycle" : "none";
      break;
    }
  }
  return j;
}

Json to_json(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return q.str();
}

Json to_json(const DigitString& d) {
  return Json{{"sequence", to_json(d.sequence())}, {"digits", big_list(d.digits())}};
}

Json to_json(const Cylinder& c) {
  return Json{{"digits", to_json(c.digits)},
              {"left", to_json(c.left)},
              {"right", to_json(c.right)},
              {"length", to_json(c.length)},
              {"left_decimal", real(to_real(c.left))},
              {"right_decimal", real(to_real(c.right))}};
}

Json to_json(const FaithfulnessReport& r) {
  const auto& env = r.envelope;
  Json bound_from = env.bound_decreasing_from ? Json(*env.bound_decreasing_from) : Json(nullptr);
  Json envelope{{"holds", env.holds},
                {"lower_holds", env.lower_holds},
                {"upper_holds", env.upper_holds},
                {"upper_supplied", env.upper_supplied},
                {"a1", env.a1.str()},
                {"d", env.d.str()},
                {"b1", env.b1.str()},
                {"q", env.q.str()},
                {"degenerate_q", env.degenerate_q},
                {"bound_dominates", env.bound_dominates},
                {"bound_decreasing_from", std::move(bound_from)},
                {"bounds", pairs(env.bounds)}};
  Json decades = Json::array();
  for (const auto& m : r.decade_maxima) decades.push_back(real(m));
  return Json{{"k_max", r.k_max},
              {"verdict", to_string(r.verdict)},
              {"thresholds", {{"met_tol", r.thresholds.met_tol},
                              {"violation_threshold", r.thresholds.violation_threshold}}},
              {"witnesses", r.witnesses},
              {"decade_maxima", std::move(decades)},
              {"square_summable_partial", real(r.square_summable_partial)},
              {"envelope", std::move(envelope)},
              {"subgeometric", {{"holds", r.subgeometric.holds},
                                {"q", r.subgeometric.q.str()},
                                {"strictly_increasing", r.subgeometric.strictly_increasing},
                                {"corollary_applies", r.subgeometric.corollary_applies}}},
              {"ratios", pairs(r.ratios)}};
}

Json to_json(const DimensionSeries& s) {
  return Json{{"formula", to_string(s.formula)},
              {"precondition_partial", real(s.precondition_partial)},
              {"points", points(s.points)}};
}

Json to_json(const LiminfEstimate& l) {
  return Json{{"estimate", real(l.estimate)}, {"lower_envelope", points(l.lower_envelope)}};
}

Json to_json(const DpReport& r) {
  return Json{{"k_max", r.k_max},
              {"verdict", to_string(r.verdict)},
              {"all_positive", r.all_positive},
              {"first_zero_rank", r.first_zero_rank ? Json(*r.first_zero_rank) : Json(nullptr)},
              {"dim_estimate", real(r.dim_estimate)},
              {"dim_is_one", r.dim_is_one},
              {"bounded", r.bounded},
              {"min_probability", log_real(r.min_probability)},
              {"separated", r.separated},
              {"hypotheses_hold", r.hypotheses_hold}};
}

Json to_json(const BoxEstimate& b) {
  return Json{{"slope", real(b.slope)},
              {"intercept", real(b.intercept)},
              {"residual", real(b.residual)},
              {"scope", b.faithful_family ? "hausdorff" : "cylinder_family_only"},
              {"series", points(b.ratios)}};
}

Json to_json(const RatioSeries& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(Json::array({p.k, real(p.value), to_string(p.flag)}));
  Json segs = Json::array();
  for (const auto& g : s.segments) {
    segs.push_back(Json{{"first", g.first}, {"last", g.last}, {"trend", to_string(g.trend)}});
  }
  return Json{{"digits", to_json(s.digits)},
              {"local_maxima", s.local_maxima},
              {"local_minima", s.local_minima},
              {"segments", std::move(segs)},
              {"points", std::move(pts)}};
}

Json to_json(const Example1Report& r) {
  auto chain = [](const std::vector<SpikePoint>& c) {
    Json out = Json::array();
    for (const auto& p : c) out.push_back(Json{{"s", p.s}, {"k", p.k}, {"value", real(p.value)}});
    return out;
  };
  Json ratios = Json::array();
  for (const auto& [label, series] : r.ratios) {
    Json j = to_json(series);
    j["label"] = label;
    ratios.push_back(std::move(j));
  }
  const auto& o = r.options;
  return Json{
      {"options", {{"k_max", o.k_max},
                   {"seed", o.seed},
                   {"samples", o.samples},
                   {"spike_form", to_string(o.spike_form)},
                   {"window", o.window},
                   {"tol", o.tol}}},
      {"measure", {{"series", to_json(r.measure)},
                   {"liminf", to_json(r.measure_liminf)},
                   {"increasing_between_spikes", r.measure_increasing_between_spikes}}},
      {"spectrum", {{"series", to_json(r.spectrum)},
                    {"liminf", to_json(r.spectrum_liminf)},
                    {"box_estimate", r.v_box ? to_json(*r.v_box) : Json(nullptr)}}},
      {"ratios", {{"series", std::move(ratios)},
                  {"spike_ratio_max", r.spike_ratio_max ? real(*r.spike_ratio_max) : Json(nullptr)},
                  {"liminf_surrogates", chain(r.liminf_surrogates)},
                  {"limsup_surrogates", chain(r.limsup_surrogates)},
                  {"surrogates_decreasing", r.surrogates_decreasing}}},
      {"dp", to_json(r.dp)},
      {"headline", {{"dim_v_estimate", real(r.dim_v_estimate)},
                    {"delta_trailing_max", real(r.delta_trailing_max)},
                    {"image_dimension_bound", real(r.image_dimension_bound)},
                    {"predicts_zero_image_dimension", r.predicts_zero_image_dimension},
                    {"predicted_image_dimension", real(r.predicted_image_dimension)}}},
      {"notes", r.notes}};
}

}  // namespace cantordim::json_io
