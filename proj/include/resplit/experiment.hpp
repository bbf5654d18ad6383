#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "resplit/config.hpp"
#include "resplit/integrators.hpp"

namespace resplit {

// Environment variable that replaces output.dir when set.
inline constexpr const char* kOutputDirEnv = "RESPLIT_OUTPUT_DIR";

struct DriftReport {
  double max_action_drift = 0.0;  // sup_n sum_a max(1,|a|)^{2s} |I_a(z^n) - I_a(z^0)|
  double max_sobolev = 0.0;       // sup_n ||z^n||_s
  long n_reached = 0;
  double epsilon = 0.0;  // ||z^0||_s
  double h = 0.0;
  double sobolev_s = 0.0;
  double max_l2_relative_change = 0.0;
  std::optional<DivergenceInfo> divergence;
};

struct ExperimentResult {
  ActionSeries series;
  DriftReport report;
  SpectralState final_state;
};

DriftReport drift_report(const ActionSeries& series, const SpectralState& initial,
                         std::optional<DivergenceInfo> divergence = std::nullopt);

/// Runs the configured experiment without touching the filesystem.
ExperimentResult execute(const ExperimentConfig& cfg);

/// Runs and writes the series CSV, drift report and optional plot/state into
/// the output directory. On divergence the partial series is still written.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::filesystem::path output_dir(const ExperimentConfig& cfg);

std::string drift_report_json(const DriftReport& report);

enum class SweepParameter { Step, Cutoff, Epsilon };
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) noexcept;
const char* sweep_parameter_name(SweepParameter p) noexcept;

struct SweepRow {
  double value = 0.0;
  std::optional<DriftReport> report;
  std::string error;
  // Largest relative change of each tracked mode action over the records.
  std::vector<double> mode_changes;
};

/// One independent run per value on up to `threads` workers; rows sorted by value.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter parameter,
                            std::vector<double> values, unsigned threads = 0,
                            std::vector<int> tracked_modes = {2, 5, 7});

std::string sweep_to_csv(const std::vector<SweepRow>& rows, SweepParameter parameter,
                         const std::vector<int>& tracked_modes);

/// max_n |A_k(t_n) - A_k(0)| / A_k(0) over the recorded samples.
double max_relative_change(const ActionSeries& series, int mode);

/// SVG line chart of log10 A_k(t) for the requested modes.
std::string render_plot(const ActionSeries& series, const std::vector<int>& modes,
                        const std::string& title = "");
void emit_plot(const ActionSeries& series, const std::vector<int>& modes,
               const std::filesystem::path& path, const std::string& title = "");

}  // namespace resplit
