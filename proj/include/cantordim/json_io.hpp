#pragma once

#include <optional>

#include <json.hpp>

#include "cantordim/billingsley.hpp"
#include "cantordim/codec.hpp"
#include "cantordim/estimator.hpp"
#include "cantordim/measure.hpp"
#include "cantordim/sequences.hpp"

// Descriptor parsing (throws ConfigError on malformed input) and report
// serialization. Reals are written as decimal strings at the working
// precision, big integers and rationals as exact strings; keys keep
// insertion order so identical inputs give byte-identical documents.
namespace cantordim::json_io {

using Json = nlohmann::ordered_json;

BasicSequence parse_sequence(const Json& j);
Json to_json(const BasicSequence& seq);

struct ModelOptions {
  std::optional<Rank> depth_cap;
  SpikeForm spike_form = SpikeForm::double_exponent;
};

/// `rows` is "uniform" | "example1" | "example1_psi" | "point_mass:j" |
/// {"custom": [[p, ...], ...]}. Probabilities may be JSON numbers (read as
/// the shortest round-trip decimal) or "p/q" strings.
SymbolModel parse_model(const std::optional<BasicSequence>& seq, const Json& rows,
                        const ModelOptions& options);
/// {"sequence": ..., "rows": ..., "depth_cap": n, "spike_form": ...}.
SymbolModel parse_model_descriptor(const Json& j, const ModelOptions& defaults);
Json to_json(const SymbolModel& m);

/// {"sequence": ..., "admissible": "all" | "example1_v" |
///  {"except_ranks": "powers_of_10" | [k, ...] | {"every": n, "offset": r},
///   "digits_at_exception": [...]} | [[...], ...], "tail": "cycle" | "none"}.
DigitSetSpec parse_set(const std::optional<BasicSequence>& seq, const Json& j);
Json to_json(const DigitSetSpec& e);

std::vector<BigInt> parse_digits(const Json& j);
BigInt parse_integer(const Json& j);
Rational parse_number(const Json& j);

Json to_json(const DigitString& d);
Json to_json(const Cylinder& c);
Json to_json(const Rational& q);
Json to_json(const FaithfulnessReport& r);
Json to_json(const DimensionSeries& s);
Json to_json(const LiminfEstimate& l);
Json to_json(const DpReport& r);
Json to_json(const BoxEstimate& b);
Json to_json(const RatioSeries& s);
Json to_json(const Example1Report& r);

}  // namespace cantordim::json_io
