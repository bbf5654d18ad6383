#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "resplit/config.hpp"
#include "resplit/errors.hpp"
#include "resplit/experiment.hpp"
#include "resplit/format.hpp"
#include "resplit/nonresonance.hpp"
#include "resplit/resonance.hpp"

using namespace resplit;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDivergence = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "0.1,0.2,pi/3" or "linspace:lo:hi:n"
std::vector<double> parse_values(const std::string& text) {
  if (text.rfind("linspace:", 0) == 0) {
    const auto parts = split(text.substr(9), ':');
    if (parts.size() != 3) throw ConfigError("--values: expected linspace:lo:hi:n");
    const double lo = parse_real_expression(parts[0]);
    const double hi = parse_real_expression(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1) throw ConfigError("--values: linspace needs n >= 1");
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return v;
  }
  std::vector<double> v;
  for (const auto& item : split(text, ',')) v.push_back(parse_real_expression(item));
  if (v.empty()) throw ConfigError("--values: empty list");
  return v;
}

// "2=10,5=30,-7=40"
std::map<int, double> parse_overrides(const std::string& text) {
  std::map<int, double> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--overrides: expected index=value, got " + item);
    out[std::stoi(item.substr(0, eq))] = parse_real_expression(item.substr(eq + 1));
  }
  return out;
}

struct ModelOptions {
  int k_max = 50;
  double potential_scale = 1.0;
  std::string overrides;

  void add(CLI::App* app) {
    app->add_option("--k-max", k_max, "Largest retained |index|");
    app->add_option("--potential-scale", potential_scale, "Scale of the convolution potential");
    app->add_option("--overrides", overrides, "Frequency overrides, e.g. 2=10,5=30,-7=40");
  }
  FrequencyModel build() const {
    auto m = FrequencyModel::nls_convolution(k_max, potential_scale);
    return overrides.empty() ? m : m.with_overrides(parse_overrides(overrides));
  }
};

Phase parse_phase(const std::string& s) {
  if (s == "midpoint") return Phase::Midpoint;
  if (s == "splitting") return Phase::Splitting;
  throw ConfigError("--phase: expected midpoint or splitting, got " + s);
}

void print_report(const ExperimentConfig& cfg, const DriftReport& r) {
  std::cout << "run " << cfg.name << ": h=" << format_double(r.h) << " steps=" << r.n_reached
            << " epsilon=" << format_double(r.epsilon)
            << " max_action_drift=" << format_double(r.max_action_drift)
            << " max_sobolev=" << format_double(r.max_sobolev)
            << " max_l2_rel=" << format_double(r.max_l2_relative_change) << '\n';
  std::cout << "outputs in " << output_dir(cfg).string() << '\n';
}

int cmd_run(const std::string& path) {
  const auto cfg = load_config(path);
  const auto result = run_experiment(cfg);
  print_report(cfg, result.report);
  if (result.report.divergence) {
    const auto& d = *result.report.divergence;
    std::cerr << "error: midpoint fixed-point iteration diverged at step " << d.step << " ("
              << d.iterations << " iterations, residual " << format_double(d.residual)
              << "); partial series written\n";
    return kExitDivergence;
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& param, const std::string& values,
              unsigned threads, const std::string& out_name, const std::vector<int>& modes) {
  const auto cfg = load_config(path);
  const auto p = parse_sweep_parameter(param);
  if (!p) throw ConfigError("--param: expected h, K or epsilon, got " + param);
  const auto rows = sweep(cfg, *p, parse_values(values), threads, modes);
  const auto csv = sweep_to_csv(rows, *p, modes);
  const std::string name = out_name.empty() ? "sweep_" + param + ".csv" : out_name;
  write_file_atomic(output_dir(cfg) / name, csv);
  std::cout << csv;
  return 0;
}

void print_frequency_table(const FrequencyModel& f, int n, double h, double cutoff) {
  std::cout << "a,omega";
  const bool truncated = std::isfinite(cutoff);
  if (truncated) std::cout << ",h_omega,kept";
  std::cout << '\n';
  for (int a = -n / 2; a < n / 2; ++a) {
    const double w = f(a);
    std::cout << a << ',' << format_double(w);
    if (truncated) std::cout << ',' << format_double(h * w) << ',' << (is_kept(h, cutoff, w) ? 1 : 0);
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step integrators for cubic NLS and their numerical resonances"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  run->add_option("config", config_path, "Config file")->required();

  std::string param, values, sweep_out;
  unsigned threads = 0;
  std::vector<int> sweep_modes{2, 5, 7};
  auto* sw = app.add_subcommand("sweep", "Run one experiment per parameter value");
  sw->add_option("config", config_path, "Config file")->required();
  sw->add_option("--param", param, "h, K or epsilon")->required();
  sw->add_option("--values", values, "Comma list or linspace:lo:hi:n")->required();
  sw->add_option("--threads", threads, "Worker threads (0: hardware)");
  sw->add_option("--modes", sweep_modes, "Modes whose relative action change is tabulated");
  sw->add_option("--out", sweep_out, "Output CSV name inside the output directory");

  ModelOptions res_model;
  std::string j_text, phase_text = "midpoint", format = "text";
  std::string target_text = "0", lo_text = "0.01", hi_text = "1";
  bool scan = false;
  int n_grid = 2000;
  double window = 0.05, tol = 1e-10;
  auto* fr = app.add_subcommand("find-resonance", "Solve Psi(h, j) = target or scan for resonances");
  fr->add_option("--j", j_text, "Multi-index, e.g. 2:+1;5:+1;-7:-1")->required();
  fr->add_option("--phase", phase_text, "midpoint or splitting");
  fr->add_option("--target", target_text, "Target phase (radians)");
  fr->add_option("--lo", lo_text, "Lower end of the step bracket");
  fr->add_option("--hi", hi_text, "Upper end of the step bracket");
  fr->add_option("--tol", tol, "Root tolerance");
  fr->add_flag("--scan", scan, "Scan [lo, hi] for Psi near 2 pi Z instead of solving");
  fr->add_option("--n-grid", n_grid, "Scan samples");
  fr->add_option("--window", window, "Scan distance window (radians)");
  fr->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  res_model.add(fr);

  ModelOptions audit_model;
  AuditParams ap;
  std::string h_text = "0.13", k_text = "pi/3", audit_format = "text";
  std::vector<int> ells{3};
  auto* au = app.add_subcommand("audit", "Audit truncated small divisors over zero-moment indices");
  au->add_option("--step", h_text, "Step size");
  au->add_option("--cutoff", k_text, "Frequency cut-off");
  au->add_option("--ell", ells, "Multi-index lengths, repeatable");
  au->add_option("--index-bound", ap.k_max, "Largest |index| enumerated");
  au->add_option("--alpha", ap.alpha, "Exponent of mu in the scaled divisor");
  au->add_flag("--stress", ap.stress, "Allow K > pi");
  au->add_option("--format", audit_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  audit_model.add(au);

  auto* fq = app.add_subcommand("freq", "Print the frequency table of a config");
  fq->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*sw) return cmd_sweep(config_path, param, values, threads, sweep_out, sweep_modes);
    if (*fr) {
      const auto f = res_model.build();
      const auto j = parse_multi_index(j_text);
      const auto phase = parse_phase(phase_text);
      const double lo = parse_real_expression(lo_text), hi = parse_real_expression(hi_text);
      std::vector<ResonanceHit> hits;
      if (scan) {
        hits = scan_resonances(j, f, phase, lo, hi, n_grid, window);
      } else {
        ResonanceQuery q{j, f, phase, parse_real_expression(target_text), lo, hi, tol};
        const double h = find_resonant_step(q);
        const double psi = psi_sum(j, f, h, phase);
        const auto [dist, ell] = distance_to_2pi_lattice(psi);
        hits.push_back({h, psi, ell, dist, small_divisor(psi), true});
      }
      std::cout << (format == "csv" ? hits_to_csv(hits) : hits_to_text(hits));
      return 0;
    }
    if (*au) {
      const auto f = audit_model.build();
      ap.h = parse_real_expression(h_text);
      ap.cutoff = parse_real_expression(k_text);
      AuditReport total;
      bool first = true;
      for (int ell : ells) {
        ap.ell = ell;
        const auto rep = audit_truncated_divisors(f, ap);
        if (first) {
          total = rep;
          first = false;
        } else {
          total.merge(rep);
        }
      }
      std::cout << (audit_format == "csv" ? audit_to_csv(total) : audit_to_text(total));
      return 0;
    }
    if (*fq) {
      const auto cfg = load_config(config_path);
      const auto sc = cfg.scheme_config();
      print_frequency_table(sc.freq, cfg.grid_size, sc.h, sc.cutoff);
      return 0;
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
