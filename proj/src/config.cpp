#include "resplit/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "resplit/errors.hpp"
#include "resplit/resonance.hpp"

namespace resplit {

using nlohmann::json;

FrequencyModel FrequencySpec::build() const {
  if (kind == FrequencyKind::Explicit) return FrequencyModel::explicit_table(overrides, k_max);
  return FrequencyModel::nls_convolution(k_max, potential_scale).with_overrides(overrides);
}

double parse_real_expression(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '*') s += c;
  }
  if (s == "inf" || s == "+inf" || s == "infinity") return kNoCutoff;
  const auto pi_at = s.find("pi");
  try {
    if (pi_at == std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    }
    double num = 1.0;
    if (pi_at > 0) {
      std::size_t used = 0;
      const auto head = s.substr(0, pi_at);
      num = head == "-" ? -1.0 : std::stod(head, &used);
      if (head != "-" && used != head.size()) throw ConfigError("");
    }
    double den = 1.0;
    auto tail = s.substr(pi_at + 2);
    if (!tail.empty()) {
      if (tail.front() != '/') throw ConfigError("");
      std::size_t used = 0;
      den = std::stod(tail.substr(1), &used);
      if (used != tail.size() - 1) throw ConfigError("");
    }
    return num * std::numbers::pi / den;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse real expression '" + text + "'");
  }
}

namespace {

void expect_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double real_value(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_real_expression(v.get<std::string>());
  throw ConfigError(where + ": expected a number");
}

template <class T>
T typed(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": wrong type");
  }
}

json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Phase parse_phase(const std::string& s, const std::string& where) {
  if (s == "midpoint") return Phase::Midpoint;
  if (s == "splitting") return Phase::Splitting;
  throw ConfigError(where + ": phase must be 'midpoint' or 'splitting'");
}

const char* phase_name(Phase p) { return p == Phase::Midpoint ? "midpoint" : "splitting"; }

Grid parse_grid(const std::string& s) {
  if (s == "shifted") return Grid::Shifted;
  if (s == "standard") return Grid::Standard;
  throw ConfigError("initial.grid: must be 'shifted' or 'standard'");
}

FrequencySpec parse_frequency(const json& j) {
  expect_keys(j, "frequency", {"kind", "k_max", "potential_scale", "overrides"});
  FrequencySpec f;
  if (j.contains("kind")) {
    const auto kind = typed<std::string>(j["kind"], "frequency.kind");
    if (kind == "nls-convolution") {
      f.kind = FrequencyKind::NlsConvolution;
    } else if (kind == "explicit") {
      f.kind = FrequencyKind::Explicit;
    } else {
      throw ConfigError("frequency.kind: must be 'nls-convolution' or 'explicit'");
    }
  }
  if (j.contains("k_max")) f.k_max = typed<int>(j["k_max"], "frequency.k_max");
  if (j.contains("potential_scale")) {
    f.potential_scale = real_value(j["potential_scale"], "frequency.potential_scale");
  }
  if (j.contains("overrides")) {
    for (const auto& pair : j["overrides"]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigError("frequency.overrides: expected [index, value] pairs");
      }
      f.overrides[typed<int>(pair[0], "frequency.overrides index")] =
          real_value(pair[1], "frequency.overrides value");
    }
  }
  return f;
}

InitialSpec parse_initial(const json& j) {
  expect_keys(j, "initial",
              {"formula", "amplitude", "coefficients", "grid", "scale_to_sobolev"});
  InitialSpec spec;
  const bool has_formula = j.contains("formula");
  const bool has_table = j.contains("coefficients");
  if (has_formula == has_table) {
    throw ConfigError("initial: give exactly one of 'formula' or 'coefficients'");
  }
  if (has_formula) {
    if (typed<std::string>(j["formula"], "initial.formula") != "paper-einit") {
      throw ConfigError("initial.formula: only 'paper-einit' is available");
    }
    PaperDatum d;
    if (j.contains("amplitude")) d.amplitude = real_value(j["amplitude"], "initial.amplitude");
    spec.source = d;
  } else {
    if (j.contains("amplitude")) throw ConfigError("initial: 'amplitude' applies to formulas only");
    CoefficientTable t;
    for (const auto& row : j["coefficients"]) {
      if (!row.is_array() || (row.size() != 2 && row.size() != 3)) {
        throw ConfigError("initial.coefficients: expected [k, re] or [k, re, im] rows");
      }
      const int k = typed<int>(row[0], "initial.coefficients k");
      const double re = real_value(row[1], "initial.coefficients re");
      const double im = row.size() == 3 ? real_value(row[2], "initial.coefficients im") : 0.0;
      t.coeffs[k] = Complex{re, im};
    }
    spec.source = t;
  }
  if (j.contains("grid")) spec.grid = parse_grid(typed<std::string>(j["grid"], "initial.grid"));
  if (j.contains("scale_to_sobolev")) {
    const auto& s = j["scale_to_sobolev"];
    expect_keys(s, "initial.scale_to_sobolev", {"s", "epsilon"});
    if (!s.contains("s") || !s.contains("epsilon")) {
      throw ConfigError("initial.scale_to_sobolev: needs 's' and 'epsilon'");
    }
    spec.scale_to = SobolevScaling{real_value(s["s"], "scale_to_sobolev.s"),
                                   real_value(s["epsilon"], "scale_to_sobolev.epsilon")};
  }
  return spec;
}

StepSpec parse_step(const json& j) {
  if (j.is_number() || j.is_string()) return real_value(j, "scheme.h");
  expect_keys(j, "scheme.h", {"resonance", "cfl"});
  if (j.contains("resonance") == j.contains("cfl")) {
    throw ConfigError("scheme.h: give a number, {'resonance': ...} or {'cfl': ...}");
  }
  if (j.contains("cfl")) return CflStepSpec{real_value(j["cfl"], "scheme.h.cfl")};
  const auto& r = j["resonance"];
  expect_keys(r, "scheme.h.resonance", {"j", "phase", "target", "bracket"});
  if (!r.contains("j") || !r.contains("bracket")) {
    throw ConfigError("scheme.h.resonance: needs 'j' and 'bracket'");
  }
  ResonantStepSpec spec;
  try {
    spec.j = parse_multi_index(typed<std::string>(r["j"], "scheme.h.resonance.j"));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("scheme.h.resonance.j: ") + e.what());
  }
  if (r.contains("phase")) {
    spec.phase = parse_phase(typed<std::string>(r["phase"], "phase"), "scheme.h.resonance");
  }
  if (r.contains("target")) spec.target = real_value(r["target"], "scheme.h.resonance.target");
  const auto& b = r["bracket"];
  if (!b.is_array() || b.size() != 2) throw ConfigError("scheme.h.resonance.bracket: [lo, hi]");
  spec.lo = real_value(b[0], "bracket lo");
  spec.hi = real_value(b[1], "bracket hi");
  return spec;
}

SchemeSpec parse_scheme_spec(const json& j) {
  expect_keys(j, "scheme",
              {"kind", "h", "cutoff", "fixed_point_tol", "fixed_point_max_iters", "nonlinearity"});
  SchemeSpec s;
  if (!j.contains("kind") || !j.contains("h")) throw ConfigError("scheme: needs 'kind' and 'h'");
  const auto kind = typed<std::string>(j["kind"], "scheme.kind");
  const auto parsed = parse_scheme(kind);
  if (!parsed) {
    throw ConfigError("scheme.kind: unknown scheme '" + kind +
                      "' (exact-split, mid-split, midpoint, truncated-split)");
  }
  s.kind = *parsed;
  s.h = parse_step(j["h"]);
  if (j.contains("cutoff")) s.cutoff = real_value(j["cutoff"], "scheme.cutoff");
  if (j.contains("fixed_point_tol")) {
    s.fixed_point_tol = real_value(j["fixed_point_tol"], "scheme.fixed_point_tol");
  }
  if (j.contains("fixed_point_max_iters")) {
    s.fixed_point_max_iters = typed<int>(j["fixed_point_max_iters"], "fixed_point_max_iters");
  }
  if (j.contains("nonlinearity")) s.nonlinearity = typed<bool>(j["nonlinearity"], "nonlinearity");
  return s;
}

OutputSpec parse_output(const json& j) {
  expect_keys(j, "output", {"dir", "csv", "report", "plot", "plot_modes", "state_csv"});
  OutputSpec o;
  if (j.contains("dir")) o.dir = typed<std::string>(j["dir"], "output.dir");
  if (j.contains("csv")) o.csv = typed<std::string>(j["csv"], "output.csv");
  if (j.contains("report")) o.report = typed<std::string>(j["report"], "output.report");
  if (j.contains("plot")) o.plot = typed<std::string>(j["plot"], "output.plot");
  if (j.contains("plot_modes")) o.plot_modes = typed<std::vector<int>>(j["plot_modes"], "plot_modes");
  if (j.contains("state_csv")) o.state_csv = typed<std::string>(j["state_csv"], "output.state_csv");
  return o;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (grid_size < 16 || grid_size % 2 != 0) throw ConfigError("grid_size: must be even and >= 16");
  if (frequency.k_max < grid_size / 2) {
    throw ConfigError("frequency.k_max: must cover grid modes |k| <= grid_size/2");
  }
  if (n_steps.has_value() == final_time.has_value()) {
    throw ConfigError("horizon: give exactly one of 'n_steps' or 'T'");
  }
  if (n_steps && *n_steps < 0) throw ConfigError("horizon.n_steps: must be >= 0");
  if (final_time && !(std::isfinite(*final_time) && *final_time >= 0.0)) {
    throw ConfigError("horizon.T: must be finite and >= 0");
  }
  if (record_every < 1) throw ConfigError("record_every: must be >= 1");
  if (sobolev_s < 0.0) throw ConfigError("sobolev_s: must be >= 0");
  if (scheme.kind == Scheme::TruncatedSplit && !std::isfinite(scheme.cutoff)) {
    throw ConfigError("scheme.cutoff: truncated-split needs a finite cut-off");
  }
  if (!(scheme.cutoff > 0.0)) throw ConfigError("scheme.cutoff: must be positive");
  if (const auto* h = std::get_if<double>(&scheme.h); h && !(*h > 0.0)) {
    throw ConfigError("scheme.h: must be positive");
  }
  for (int m : output.plot_modes) {
    if (m < 0 || m >= grid_size / 2) throw ConfigError("output.plot_modes: mode out of range");
  }
  if (output.csv.empty()) throw ConfigError("output.csv: must not be empty");
}

SchemeConfig ExperimentConfig::scheme_config() const {
  SchemeConfig c;
  c.scheme = scheme.kind;
  c.cutoff = scheme.cutoff;
  c.fixed_point_tol = scheme.fixed_point_tol;
  c.fixed_point_max_iters = scheme.fixed_point_max_iters;
  c.nonlinearity = scheme.nonlinearity;
  c.freq = frequency.build();
  if (const auto* h = std::get_if<double>(&scheme.h)) {
    c.h = *h;
  } else if (const auto* r = std::get_if<ResonantStepSpec>(&scheme.h)) {
    c.h = find_resonant_step({r->j, c.freq, r->phase, r->target, r->lo, r->hi, 1e-12});
  } else {
    c.h = cfl_step(c.freq, grid_size, std::get<CflStepSpec>(scheme.h).cfl);
  }
  return c;
}

long ExperimentConfig::steps_for(double h) const {
  if (n_steps) return *n_steps;
  return std::lround(*final_time / h);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_keys(j, "config",
              {"name", "grid_size", "frequency", "initial", "scheme", "horizon", "record_every",
               "sobolev_s", "output"});
  ExperimentConfig c;
  if (j.contains("name")) c.name = typed<std::string>(j["name"], "name");
  if (j.contains("grid_size")) c.grid_size = typed<int>(j["grid_size"], "grid_size");
  if (j.contains("frequency")) c.frequency = parse_frequency(j["frequency"]);
  if (!j.contains("initial")) throw ConfigError("config: missing 'initial'");
  c.initial = parse_initial(j["initial"]);
  if (!j.contains("scheme")) throw ConfigError("config: missing 'scheme'");
  c.scheme = parse_scheme_spec(j["scheme"]);
  if (!j.contains("horizon")) throw ConfigError("config: missing 'horizon'");
  const auto& hz = j["horizon"];
  expect_keys(hz, "horizon", {"n_steps", "T"});
  if (hz.contains("n_steps")) c.n_steps = typed<long>(hz["n_steps"], "horizon.n_steps");
  if (hz.contains("T")) c.final_time = real_value(hz["T"], "horizon.T");
  if (j.contains("record_every")) c.record_every = typed<long>(j["record_every"], "record_every");
  if (j.contains("sobolev_s")) c.sobolev_s = real_value(j["sobolev_s"], "sobolev_s");
  if (j.contains("output")) c.output = parse_output(j["output"]);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["grid_size"] = c.grid_size;

  json f;
  f["kind"] = c.frequency.kind == FrequencyKind::Explicit ? "explicit" : "nls-convolution";
  f["k_max"] = c.frequency.k_max;
  f["potential_scale"] = c.frequency.potential_scale;
  f["overrides"] = json::array();
  for (const auto& [a, w] : c.frequency.overrides) f["overrides"].push_back({a, w});
  j["frequency"] = f;

  json init;
  if (const auto* d = std::get_if<PaperDatum>(&c.initial.source)) {
    init["formula"] = "paper-einit";
    init["amplitude"] = d->amplitude;
  } else {
    init["coefficients"] = json::array();
    for (const auto& [k, v] : std::get<CoefficientTable>(c.initial.source).coeffs) {
      init["coefficients"].push_back({k, v.real(), v.imag()});
    }
  }
  if (c.initial.grid) init["grid"] = *c.initial.grid == Grid::Shifted ? "shifted" : "standard";
  if (c.initial.scale_to) {
    init["scale_to_sobolev"] = {{"s", c.initial.scale_to->s},
                                {"epsilon", c.initial.scale_to->epsilon}};
  }
  j["initial"] = init;

  json s;
  s["kind"] = scheme_name(c.scheme.kind);
  if (const auto* h = std::get_if<double>(&c.scheme.h)) {
    s["h"] = *h;
  } else if (const auto* r = std::get_if<ResonantStepSpec>(&c.scheme.h)) {
    s["h"] = {{"resonance",
               {{"j", format_multi_index(r->j)},
                {"phase", phase_name(r->phase)},
                {"target", r->target},
                {"bracket", {r->lo, r->hi}}}}};
  } else {
    s["h"] = {{"cfl", std::get<CflStepSpec>(c.scheme.h).cfl}};
  }
  s["cutoff"] = real_to_json(c.scheme.cutoff);
  s["fixed_point_tol"] = c.scheme.fixed_point_tol;
  s["fixed_point_max_iters"] = c.scheme.fixed_point_max_iters;
  s["nonlinearity"] = c.scheme.nonlinearity;
  j["scheme"] = s;

  if (c.n_steps) j["horizon"] = {{"n_steps", *c.n_steps}};
  if (c.final_time) j["horizon"] = {{"T", *c.final_time}};
  j["record_every"] = c.record_every;
  j["sobolev_s"] = c.sobolev_s;

  json o;
  o["dir"] = c.output.dir.string();
  o["csv"] = c.output.csv;
  o["report"] = c.output.report;
  o["plot"] = c.output.plot;
  o["plot_modes"] = c.output.plot_modes;
  o["state_csv"] = c.output.state_csv;
  j["output"] = o;
  return j.dump(2) + "\n";
}

}  // namespace resplit
