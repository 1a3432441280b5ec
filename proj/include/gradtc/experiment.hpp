#pragma once

// Experiment runner: config parsing/validation, seeded parallel disorder
// ensembles over parameter grids, deterministic reduction, and plot-ready
// output files.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradtc/evolve.hpp"
#include "gradtc/models.hpp"

namespace gradtc {

inline constexpr const char* library_version = "0.1.0";

enum class ExperimentKind {
  PhaseDiagram,
  Trajectory,
  ReversalTime,
  MutualInfo,
  Qfi,
  QfiTrace,
  Heating,
  Entropy,
  Participation,
  SwChecks,
};

const char* to_string(ExperimentKind kind);

struct GridAxis {
  std::string param;  // J_mhz, epsilon, g_mhz, width_mhz, A_mhz, sites
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 1;
  bool log_scale = false;

  std::vector<double> values() const;
};

enum class EntropyMode { Evolved, Eigenstate };

struct RunParams {
  std::size_t n_periods = 0;
  std::size_t s_max = 0;
  std::size_t realizations = 1;
  std::uint64_t master_seed = 0;
  std::string initial_state = "neel";
  std::vector<int> sites_tracked = {1};
  // late-time window: n_samples sample times with J*t (MHz * us) spanning
  // [jt_min, jt_max] on a log grid
  double jt_min = 1e3;
  double jt_max = 1e4;
  std::size_t window_samples = 24;
  EntropyMode entropy_mode = EntropyMode::Evolved;
  std::vector<std::size_t> checkpoint_periods;  // heating
  std::size_t late_window_periods = 0;          // heating; 0 = n_periods/8
};

struct OutputParams {
  std::string directory = "out";
  std::string format = "csv";
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PhaseDiagram;
  ModelSpec model;
  DriveSpec drive;
  std::vector<GridAxis> grid;
  RunParams run;
  OutputParams output;

  void validate() const;  // throws config_error
};

ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);  // canonical, round-trips
std::uint64_t config_hash(const ExperimentConfig& config);   // FNV-1a over canonical JSON

struct ResultTable {
  std::vector<std::string> columns;            // names carry units
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> metadata;
  ExperimentKind kind = ExperimentKind::PhaseDiagram;
};

// Runs grid points x realizations on a worker pool. Reduction is keyed by
// realization index, so the numeric output is identical for any worker count.
ResultTable run_experiment(const ExperimentConfig& config, std::size_t workers = 0);

// Writes results.csv plus the plot-ready file for the experiment under
// config.output.directory; returns the written file paths.
std::vector<std::string> write_results(const ExperimentConfig& config, const ResultTable& table);

// Plot-ready emission alone; figure_id must match the table's experiment.
std::string emit_plot_data(const ResultTable& table, const std::string& figure_id,
                           const std::string& directory);

// least-squares fit of log(y) = intercept + slope * log(x); used for the
// power-law tails (QFI alpha/exponent, entropy nu, spectral-distance slope)
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
  std::size_t points = 0;
};
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct Preset {
  std::string name;
  std::string description;
  std::string note;  // how the desk-scale run deviates from the full-scale one
  std::string config_json;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);  // throws config_error

} // namespace gradtc
