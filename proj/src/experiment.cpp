#include "resplit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "resplit/errors.hpp"
#include "resplit/format.hpp"

namespace resplit {

using nlohmann::ordered_json;

DriftReport drift_report(const ActionSeries& series, const SpectralState& initial,
                         std::optional<DivergenceInfo> divergence) {
  DriftReport r;
  r.max_action_drift = series.max_weighted_drift;
  r.max_sobolev = series.max_sobolev;
  r.n_reached = series.steps_completed;
  r.epsilon = sobolev_norm(initial, series.sobolev_s);
  r.h = series.h;
  r.sobolev_s = series.sobolev_s;
  r.max_l2_relative_change = series.max_l2_relative_change;
  r.divergence = divergence;
  return r;
}

ExperimentResult execute(const ExperimentConfig& cfg) {
  cfg.validate();
  const SchemeConfig scheme = cfg.scheme_config();
  const SpectralState initial = synthesize_initial(cfg.initial, cfg.grid_size);
  auto outcome =
      run_checked(initial, scheme, cfg.steps_for(scheme.h), cfg.record_every, cfg.sobolev_s);
  ExperimentResult result;
  result.report = drift_report(outcome.series, initial, outcome.failure);
  result.series = std::move(outcome.series);
  result.final_state = std::move(outcome.final_state);
  return result;
}

std::filesystem::path output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return cfg.output.dir;
}

namespace {

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string drift_report_json(const DriftReport& report) {
  ordered_json j;
  j["max_action_drift"] = number(report.max_action_drift);
  j["max_sobolev"] = number(report.max_sobolev);
  j["n_reached"] = report.n_reached;
  j["epsilon"] = number(report.epsilon);
  j["h"] = number(report.h);
  j["sobolev_s"] = number(report.sobolev_s);
  j["max_l2_relative_change"] = number(report.max_l2_relative_change);
  if (report.divergence) {
    j["divergence"] = {{"step", report.divergence->step},
                       {"iterations", report.divergence->iterations},
                       {"residual", number(report.divergence->residual)}};
  } else {
    j["divergence"] = nullptr;
  }
  return j.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result = execute(cfg);
  const auto dir = output_dir(cfg);
  write_file_atomic(dir / cfg.output.csv, series_to_csv(result.series));
  write_file_atomic(dir / cfg.output.report, drift_report_json(result.report));
  if (!cfg.output.plot.empty()) {
    emit_plot(result.series, cfg.output.plot_modes, dir / cfg.output.plot, cfg.name);
  }
  if (!cfg.output.state_csv.empty()) {
    write_file_atomic(dir / cfg.output.state_csv, state_to_csv(result.final_state));
  }
  return result;
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) noexcept {
  if (name == "h") return SweepParameter::Step;
  if (name == "K") return SweepParameter::Cutoff;
  if (name == "epsilon") return SweepParameter::Epsilon;
  return std::nullopt;
}

const char* sweep_parameter_name(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::Step: return "h";
    case SweepParameter::Cutoff: return "K";
    case SweepParameter::Epsilon: return "epsilon";
  }
  return "unknown";
}

double max_relative_change(const ActionSeries& series, int mode) {
  if (series.records.empty()) throw ParameterError("max_relative_change: empty series");
  if (mode < 0 || mode >= series.n / 2) {
    throw RangeError("max_relative_change: mode " + std::to_string(mode) + " outside [0, " +
                     std::to_string(series.n / 2) + ")");
  }
  const double a0 = series.records.front().actions[static_cast<std::size_t>(mode)];
  double worst = 0.0;
  for (const auto& r : series.records) {
    const double d = std::abs(r.actions[static_cast<std::size_t>(mode)] - a0);
    worst = std::max(worst, a0 > 0.0 ? d / a0 : d);
  }
  return worst;
}

namespace {

ExperimentConfig with_parameter(ExperimentConfig cfg, SweepParameter p, double v) {
  switch (p) {
    case SweepParameter::Step: cfg.scheme.h = v; break;
    case SweepParameter::Cutoff: cfg.scheme.cutoff = v; break;
    case SweepParameter::Epsilon:
      if (cfg.initial.scale_to) {
        cfg.initial.scale_to->epsilon = v;
      } else {
        cfg.initial.scale_to = SobolevScaling{cfg.sobolev_s, v};
      }
      break;
  }
  return cfg;
}

}  // namespace

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter parameter,
                            std::vector<double> values, unsigned threads,
                            std::vector<int> tracked_modes) {
  if (values.empty()) throw ParameterError("sweep: no values");
  std::sort(values.begin(), values.end());
  std::vector<SweepRow> rows(values.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(values.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        const auto result = execute(with_parameter(base, parameter, values[i]));
        row.report = result.report;
        for (int m : tracked_modes) row.mode_changes.push_back(max_relative_change(result.series, m));
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, SweepParameter parameter,
                         const std::vector<int>& tracked_modes) {
  std::string out = sweep_parameter_name(parameter);
  out += ",max_action_drift,max_sobolev,n_reached,diverged";
  for (int m : tracked_modes) out += ",rel_change_A_" + std::to_string(m);
  out += ",error\n";
  for (const auto& row : rows) {
    out += format_double(row.value);
    if (row.report) {
      out += ',' + format_double(row.report->max_action_drift) + ',' +
             format_double(row.report->max_sobolev) + ',' + std::to_string(row.report->n_reached) +
             ',' + (row.report->divergence ? "1" : "0");
    } else {
      out += ",,,,";
    }
    for (std::size_t i = 0; i < tracked_modes.size(); ++i) {
      out += ',';
      if (i < row.mode_changes.size()) out += format_double(row.mode_changes[i]);
    }
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += ',' + err + '\n';
  }
  return out;
}

}  // namespace resplit
