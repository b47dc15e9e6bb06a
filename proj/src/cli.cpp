#include "cantordim/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantordim/json_io.hpp"

namespace cantordim::cli {

namespace {

using json_io::Json;

struct FlagInfo {
  const char* name;
  const char* help;
  bool json_valued;
};

constexpr FlagInfo kFlagTable[] = {
    {"seq", "basic sequence descriptor (JSON)", true},
    {"rows", "probability rows: uniform | example1 | example1_psi | point_mass:j | {\"custom\": [[...]]}", true},
    {"model", "full model descriptor (JSON); replaces --seq/--rows", true},
    {"set", "digit set descriptor (JSON)", true},
    {"envelope", "geometric majorant {\"b1\": .., \"q\": ..} instead of the fitted one", true},
    {"digits", "digit string: JSON array or comma list", true},
    {"x", "point in [0, 1]: p/q, integer or decimal", false},
    {"rank", "rank k", false},
    {"k-max", "largest rank evaluated", false},
    {"window", "trailing window for liminf estimates", false},
    {"depth-cap", "model depth cap (default: max(100, requested rank))", false},
    {"spike-form", "double_exponent | triple_exponent", false},
    {"met-tol", "final-decade tolerance for the faithfulness verdict", false},
    {"violation-threshold", "spike ratio that counts as a violation witness", false},
    {"seed", "seed for sampled digit strings", false},
    {"samples", "number of sampled digit strings", false},
    {"series-dir", "directory for per-series CSV and plot-data files", false},
    {"precision", "significant decimal digits (default from CANTORDIM_PRECISION or 50)", false},
    {"format", "json | csv | plot-data", false},
    {"out", "write the report here instead of stdout", false},
};

const FlagInfo& flag_info(const std::string& name) {
  for (const auto& f : kFlagTable) {
    if (name == f.name) return f;
  }
  throw std::logic_error("unregistered flag " + name);
}

const std::vector<std::string> kCommon = {"precision", "format", "out"};

const std::map<std::string, std::vector<std::string>> kCommands = {
    {"encode", {"seq", "x", "rank"}},
    {"decode", {"seq", "digits"}},
    {"cylinder", {"seq", "digits"}},
    {"faithfulness", {"seq", "k-max", "met-tol", "violation-threshold", "envelope"}},
    {"dim-measure", {"seq", "rows", "model", "k-max", "window", "depth-cap", "spike-form"}},
    {"dim-spectrum", {"seq", "rows", "model", "k-max", "window", "depth-cap", "spike-form"}},
    {"cdf", {"seq", "rows", "model", "x", "rank", "depth-cap", "spike-form"}},
    {"billingsley", {"seq", "rows", "model", "digits", "k-max", "depth-cap", "spike-form"}},
    {"boxcount", {"seq", "set", "k-max"}},
    {"example1", {"k-max", "seed", "samples", "spike-form", "window", "series-dir"}},
};

const std::map<std::string, std::string> kDescriptions = {
    {"encode", "Cantor series digits of x to a given rank"},
    {"decode", "exact value of a digit string"},
    {"cylinder", "endpoints and length of a cylinder"},
    {"faithfulness", "faithfulness diagnostic of a basic sequence"},
    {"dim-measure", "entropy dimension series of a symbol model"},
    {"dim-spectrum", "spectrum dimension series of a symbol model"},
    {"cdf", "distribution function of a symbol model at x"},
    {"billingsley", "Billingsley ratio series along a digit string"},
    {"boxcount", "cylinder-count dimension estimate of a digit set"},
    {"example1", "end-to-end run of the k + 1 counterexample"},
};

/// Text form of a scalar value, used for comparisons and number parsing.
std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

class Values {
 public:
  bool has(const std::string& k) const { return v_.contains(k); }
  const Json& at(const std::string& k) const { return v_.at(k); }
  void set(const std::string& k, Json j) { v_[k] = std::move(j); }

  std::optional<std::string> text(const std::string& k) const {
    if (!has(k)) return std::nullopt;
    return scalar_text(at(k));
  }

  std::uint64_t unsigned_or(const std::string& k, std::uint64_t fallback) const {
    if (!has(k)) return fallback;
    const BigInt n = json_io::parse_integer(at(k));
    if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) {
      throw ConfigError("--" + k + " must be a non-negative integer");
    }
    return n.convert_to<std::uint64_t>();
  }

  double double_or(const std::string& k, double fallback) const {
    if (!has(k)) return fallback;
    const auto t = scalar_text(at(k));
    try {
      std::size_t used = 0;
      const double d = std::stod(t, &used);
      if (used == t.size()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("--" + k + " must be a number, got \"" + t + "\"");
  }

  const Json& require(const std::string& k) const {
    if (!has(k)) throw ConfigError("missing --" + k);
    return at(k);
  }

 private:
  std::map<std::string, Json> v_;
};

Json parse_json_text(const std::string& flag, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in --" + flag + ": " + e.what());
  }
}

std::vector<BigInt> digits_of(const Json& j) {
  if (j.is_string()) {
    std::vector<BigInt> out;
    std::stringstream ss(j.get<std::string>());
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        out.push_back(parse_bigint(item));
      } catch (const std::exception&) {
        throw ConfigError("bad digit \"" + item + "\" in --digits");
      }
    }
    return out;
  }
  return json_io::parse_digits(j);
}

SpikeForm spike_form_of(const Values& v) {
  const auto t = v.text("spike-form").value_or("double_exponent");
  if (t == "double_exponent") return SpikeForm::double_exponent;
  if (t == "triple_exponent") return SpikeForm::triple_exponent;
  throw ConfigError("--spike-form must be double_exponent or triple_exponent");
}

Rank k_max_of(const Values& v, Rank fallback) {
  const Rank k = v.unsigned_or("k-max", fallback);
  if (k < 2) throw ConfigError("--k-max must be >= 2");
  return k;
}

std::size_t window_of(const Values& v) {
  const auto w = v.unsigned_or("window", 10);
  if (w < 1) throw ConfigError("--window must be >= 1");
  return w;
}

BasicSequence sequence_of(const Values& v) { return json_io::parse_sequence(v.require("seq")); }

std::optional<BasicSequence> optional_sequence(const Values& v) {
  if (!v.has("seq")) return std::nullopt;
  return sequence_of(v);
}

/// Model from --model or --seq/--rows; `needed` is the deepest rank the
/// command will touch, used for the default depth cap.
SymbolModel model_of(const Values& v, Rank needed) {
  json_io::ModelOptions options;
  options.spike_form = spike_form_of(v);
  if (v.has("depth-cap")) {
    options.depth_cap = v.unsigned_or("depth-cap", 0);
    if (*options.depth_cap < 1) throw ConfigError("--depth-cap must be >= 1");
  } else {
    options.depth_cap = options.spike_form == SpikeForm::triple_exponent
                            ? needed
                            : std::max<Rank>(kDefaultDepthCap, needed);
  }
  if (v.has("model")) {
    if (v.has("rows") || v.has("seq")) throw ConfigError("give either --model or --seq/--rows, not both");
    return json_io::parse_model_descriptor(v.at("model"), options);
  }
  if (!v.has("rows")) throw ConfigError("missing --rows (or --model)");
  return json_io::parse_model(optional_sequence(v), v.at("rows"), options);
}

struct Series {
  std::string name;
  std::vector<std::pair<Rank, std::string>> rows;
};

template <class Points>
Series series_of(std::string name, const Points& points) {
  Series s{std::move(name), {}};
  for (const auto& p : points) s.rows.emplace_back(p.k, format(p.value));
  return s;
}

struct Emission {
  Json input;
  Json result;
  std::vector<Series> series;  // the first one backs csv / plot-data output
};

Emission cmd_encode(const Values& v) {
  const BasicSequence seq = sequence_of(v);
  const Rational x = json_io::parse_number(v.require("x"));
  const Rank k = v.unsigned_or("rank", 10);
  const DigitString d = encode(x, seq, k);
  Series s{"digits", {}};
  for (Rank i = 0; i < d.rank(); ++i) s.rows.emplace_back(i + 1, d[i].str());
  return {{{"sequence", json_io::to_json(seq)}, {"x", json_io::to_json(x)}, {"rank", k}},
          json_io::to_json(d),
          {std::move(s)}};
}

Emission cmd_decode(const Values& v) {
  const DigitString d(sequence_of(v), digits_of(v.require("digits")));
  const Rational x = decode(d);
  return {json_io::to_json(d), {{"value", json_io::to_json(x)}, {"decimal", format(to_real(x))}}, {}};
}

Emission cmd_cylinder(const Values& v) {
  const DigitString d(sequence_of(v), digits_of(v.require("digits")));
  return {json_io::to_json(d), json_io::to_json(cylinder(d)), {}};
}

Emission cmd_faithfulness(const Values& v) {
  const BasicSequence seq = sequence_of(v);
  const Rank k_max = k_max_of(v, 1000);
  FaithfulnessThresholds t;
  t.met_tol = v.double_or("met-tol", t.met_tol);
  t.violation_threshold = v.double_or("violation-threshold", t.violation_threshold);
  std::optional<GeometricEnvelope> env;
  if (v.has("envelope")) {
    const Json& e = v.at("envelope");
    if (!e.is_object() || !e.contains("b1") || !e.contains("q")) {
      throw ConfigError("--envelope needs {\"b1\": .., \"q\": ..}");
    }
    env = GeometricEnvelope{json_io::parse_integer(e.at("b1")), json_io::parse_integer(e.at("q"))};
  }
  const FaithfulnessReport r = faithfulness_diagnostic(seq, k_max, t, env);
  Series s{"ratios", {}};
  for (const auto& [k, value] : r.ratios) s.rows.emplace_back(k, format(value));
  return {{{"sequence", json_io::to_json(seq)}, {"k_max", k_max}}, json_io::to_json(r), {std::move(s)}};
}

Emission cmd_dimension(const Values& v, bool spectrum) {
  const Rank k_max = k_max_of(v, 100);
  const SymbolModel m = model_of(v, k_max);
  const DimensionSeries s = spectrum ? dim_spectrum_series(m, k_max) : dim_measure_series(m, k_max);
  const std::size_t window = std::min<std::size_t>(window_of(v), s.points.size());
  Json result{{"series", json_io::to_json(s)}, {"liminf", json_io::to_json(liminf_estimate(s, window))}};
  return {{{"model", json_io::to_json(m)}, {"k_max", k_max}, {"window", window}},
          std::move(result),
          {series_of(spectrum ? "spectrum" : "measure", s.points)}};
}

Emission cmd_cdf(const Values& v) {
  const Rational x = json_io::parse_number(v.require("x"));
  const Rank k = v.unsigned_or("rank", 20);
  const SymbolModel m = model_of(v, k);
  return {{{"model", json_io::to_json(m)}, {"x", json_io::to_json(x)}, {"rank", k}},
          {{"value", format(cdf(m, x, k))}},
          {}};
}

Emission cmd_billingsley(const Values& v) {
  const std::vector<BigInt> digits = digits_of(v.require("digits"));
  const Rank k_max = v.has("k-max") ? k_max_of(v, 0) : static_cast<Rank>(digits.size());
  const SymbolModel m = model_of(v, k_max);
  const DigitString d(m.sequence(), digits);
  const RatioSeries r = ratio_series(m, d, k_max);
  return {{{"model", json_io::to_json(m)}, {"k_max", k_max}}, json_io::to_json(r),
          {series_of("ratios", r.points)}};
}

Emission cmd_boxcount(const Values& v) {
  const DigitSetSpec e = json_io::parse_set(optional_sequence(v), v.require("set"));
  const Rank k_max = k_max_of(v, 100);
  const BoxEstimate b = box_dimension_estimate(e, k_max);
  Json result = json_io::to_json(b);
  result["cylinders_at_k_max"] = count_cylinders(e, k_max).str();
  return {{{"set", json_io::to_json(e)}, {"k_max", k_max}}, std::move(result), {series_of("ratios", b.ratios)}};
}

Emission cmd_example1(const Values& v) {
  Example1Options o;
  o.k_max = k_max_of(v, 100);
  o.seed = v.unsigned_or("seed", o.seed);
  o.samples = v.unsigned_or("samples", o.samples);
  o.spike_form = spike_form_of(v);
  o.window = window_of(v);
  const Example1Report r = example1_report(o);
  Emission e{{{"k_max", o.k_max}, {"seed", o.seed}}, json_io::to_json(r), {}};
  e.series.push_back(series_of("measure", r.measure.points));
  e.series.push_back(series_of("spectrum", r.spectrum.points));
  for (const auto& [label, s] : r.ratios) e.series.push_back(series_of("ratio_" + label, s.points));
  return e;
}

Emission dispatch(const std::string& command, const Values& v) {
  if (command == "encode") return cmd_encode(v);
  if (command == "decode") return cmd_decode(v);
  if (command == "cylinder") return cmd_cylinder(v);
  if (command == "faithfulness") return cmd_faithfulness(v);
  if (command == "dim-measure") return cmd_dimension(v, false);
  if (command == "dim-spectrum") return cmd_dimension(v, true);
  if (command == "cdf") return cmd_cdf(v);
  if (command == "billingsley") return cmd_billingsley(v);
  if (command == "boxcount") return cmd_boxcount(v);
  return cmd_example1(v);
}

void write_series(std::ostream& os, const Series& s, bool csv) {
  if (csv) os << "k,value\n";
  for (const auto& [k, value] : s.rows) os << k << (csv ? "," : " ") << value << '\n';
}

std::string normalized_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

/// Merges a JSON config file over the command-line values; the file wins and
/// every overridden flag is reported.
void merge_config_file(const std::string& path, const std::vector<std::string>& allowed, Values& v,
                       std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  Json file;
  try {
    file = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in config file " + path + ": " + e.what());
  }
  if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [raw_key, value] : file.items()) {
    const std::string key = normalized_key(raw_key);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("config key \"" + raw_key + "\" does not apply to this subcommand");
    }
    Json j = value;
    if (flag_info(key).json_valued && j.is_string() && key != "digits") j = parse_json_text(key, j.get<std::string>());
    if (v.has(key) && scalar_text(v.at(key)) != scalar_text(j)) {
      err << "warning: config file " << path << " overrides --" << key << '\n';
    }
    v.set(key, std::move(j));
  }
}

unsigned precision_of(const Values& v) {
  std::string text = std::to_string(kDefaultPrecision);
  if (const char* env = std::getenv(kPrecisionEnv); env && *env) text = env;
  if (auto t = v.text("precision")) text = *t;
  unsigned long digits = 0;
  try {
    std::size_t used = 0;
    digits = std::stoul(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ConfigError("precision must be an integer, got \"" + text + "\"");
  }
  if (digits < kMinPrecision) throw ConfigError("precision must be >= " + std::to_string(kMinPrecision));
  if (digits > 100000) throw ConfigError("precision above 100000 digits is not supported");
  return static_cast<unsigned>(digits);
}

int execute(const std::string& command, Values& v, std::ostream& out) {
  const unsigned digits = precision_of(v);
  ScopedPrecision scope(digits);

  const std::string fmt = v.text("format").value_or("json");
  if (fmt != "json" && fmt != "csv" && fmt != "plot-data") {
    throw ConfigError("--format must be json, csv or plot-data");
  }
  if (fmt != "json" && command == "example1") {
    throw ConfigError("example1 emits JSON; use --series-dir for CSV and plot-data files");
  }

  Emission e = dispatch(command, v);

  std::ostringstream doc;
  if (fmt == "json") {
    const Json report{{"command", command},
                      {"precision", digits},
                      {"input", std::move(e.input)},
                      {"result", std::move(e.result)}};
    doc << report.dump(2) << '\n';
  } else {
    if (e.series.empty()) throw ConfigError(command + " has no series for --format " + fmt);
    write_series(doc, e.series.front(), fmt == "csv");
  }

  if (auto dir = v.text("series-dir")) {
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    for (const auto& s : e.series) {
      std::ofstream csv(std::filesystem::path(*dir) / (s.name + ".csv"));
      std::ofstream dat(std::filesystem::path(*dir) / (s.name + ".dat"));
      if (!csv || !dat) throw ConfigError("cannot write series files under " + *dir);
      write_series(csv, s, true);
      write_series(dat, s, false);
    }
  }

  if (auto path = v.text("out")) {
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + *path);
    file << doc.str();
  } else {
    out << doc.str();
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cantor series expansions: faithfulness, dimension series, Billingsley ratios", "cantordim"};
  app.require_subcommand(1);

  std::map<std::string, std::string> raw;  // "command/flag" -> text
  std::map<std::string, std::string> config_path;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> options;
  for (const auto& [name, flags] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    std::vector<std::string> all = flags;
    all.insert(all.end(), kCommon.begin(), kCommon.end());
    for (const auto& f : all) {
      options[name].emplace_back(f, sub->add_option("--" + f, raw[name + "/" + f], flag_info(f).help));
    }
    sub->add_option("--config", config_path[name], "JSON file of flag values; wins over the command line");
  }

  std::vector<const char*> argv{"cantordim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "cantordim: error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Values v;
    for (const auto& [flag, opt] : options[command]) {
      if (opt->count() == 0) continue;
      const std::string& text = raw[command + "/" + flag];
      const bool as_json = flag_info(flag).json_valued && !(flag == "digits" && !text.starts_with("["));
      v.set(flag, as_json ? parse_json_text(flag, text) : Json(text));
    }
    if (!config_path[command].empty()) {
      std::vector<std::string> allowed = kCommands.at(command);
      allowed.insert(allowed.end(), kCommon.begin(), kCommon.end());
      merge_config_file(config_path[command], allowed, v, err);
    }
    return execute(command, v, out);
  } catch (const ConfigError& e) {
    err << "cantordim: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "cantordim: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Json::exception& e) {
    err << "cantordim: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "cantordim: failure: " << e.what() << '\n';
    return kExitDomain;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace cantordim::cli
