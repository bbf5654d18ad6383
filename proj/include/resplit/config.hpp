#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resplit/frequency.hpp"
#include "resplit/integrators.hpp"
#include "resplit/multi_index.hpp"
#include "resplit/spectral.hpp"

namespace resplit {

struct FrequencySpec {
  FrequencyKind kind = FrequencyKind::NlsConvolution;
  int k_max = 50;
  double potential_scale = 1.0;
  std::map<int, double> overrides;

  FrequencyModel build() const;
};

// Step given as the root of Psi(h, j) = target inside a bracket.
struct ResonantStepSpec {
  MultiIndex j;
  Phase phase = Phase::Midpoint;
  double target = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Step chosen so h * max|omega| = cfl over the grid modes.
struct CflStepSpec {
  double cfl = 1.0;
};

using StepSpec = std::variant<double, ResonantStepSpec, CflStepSpec>;

struct SchemeSpec {
  Scheme kind = Scheme::MidSplit;
  StepSpec h = 0.1;
  double cutoff = kNoCutoff;
  double fixed_point_tol = 1e-12;
  int fixed_point_max_iters = 200;
  bool nonlinearity = true;
};

struct OutputSpec {
  std::filesystem::path dir = "out";
  std::string csv = "series.csv";
  std::string report = "drift.json";
  std::string plot;  // empty: no plot
  std::vector<int> plot_modes{2, 5, 7};
  std::string state_csv;  // final state snapshot, empty: none
};

struct ExperimentConfig {
  std::string name = "experiment";
  int grid_size = 100;
  FrequencySpec frequency;
  InitialSpec initial;
  SchemeSpec scheme;
  std::optional<long> n_steps;
  std::optional<double> final_time;
  long record_every = 1;
  double sobolev_s = 1.0;
  OutputSpec output;

  void validate() const;

  // Resolves the step (root finding, CFL) and the frequency model.
  SchemeConfig scheme_config() const;
  long steps_for(double h) const;
};

/// Strict parse: unknown keys, wrong types, and inconsistent horizons raise ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ExperimentConfig& cfg);

/// Accepts a number or one of "inf", "pi", "pi/3", "2pi", "2*pi/3", ...
double parse_real_expression(const std::string& text);

}  // namespace resplit
