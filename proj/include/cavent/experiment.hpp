#pragma once

// Orchestration of coupling sweeps, time scans and single steady-state points.

#include <optional>
#include <string>
#include <vector>

#include "cavent/config.hpp"

namespace cavent {

struct SweepRow {
  double gI_rad_s = 0.0;
  double gII_rad_s = 0.0;
  bool stable = false;
  /// One value per partition; empty when the point is unstable.
  std::vector<double> entanglement;
  double min_2nu = 0.0;
};

struct SweepResult {
  std::vector<std::string> partition_names;
  std::vector<SweepRow> rows;
};

struct TimeRow {
  double t_fs = 0.0;
  std::vector<double> entanglement;
  std::vector<double> excitation;  ///< one per mode
};

struct TimeSeries {
  std::vector<std::string> partition_names;
  std::vector<std::string> mode_labels;
  std::vector<TimeRow> rows;
  /// Set when the scan stopped early; `rows` holds what was computed.
  std::optional<std::string> error;
};

struct SteadyReport {
  std::vector<std::string> partition_names;
  std::vector<std::string> mode_labels;
  double gI_rad_s = 0.0;
  double gII_rad_s = 0.0;
  std::vector<double> entanglement;
  double min_2nu = 0.0;
  SteadyTime time_to_steady;
  /// Largest excitation number of each mode over the configured time grid.
  std::vector<double> max_excitation;
};

/// Relative tolerance used for the reported time to steady state.
inline constexpr double kSteadyRelTol = 0.05;

/// Sweeps (G~_I, G~_II) over the grid, outer loop over the G~_II list and inner
/// loop over G~_I samples. Grid points run on `workers` threads; rows are
/// returned in grid order regardless.
SweepResult run_coupling_sweep(const ExperimentSpec& spec, int workers = 1);

/// Evolves the vacuum (at t = 0) to every time of the grid.
TimeSeries run_time_scan(const ExperimentSpec& spec);

/// Throws NoSteadyStateError when the configured model is unstable.
SteadyReport run_steady_point(const ExperimentSpec& spec);

/// The configuration with the first two base couplings replaced.
PhysicalConfig with_base_couplings(const PhysicalConfig& config, double gI_rad_s,
                                   double gII_rad_s);

}  // namespace cavent
