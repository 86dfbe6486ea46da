#pragma once

// Experiment description files. The format is a flat key = value document
// with optional [section] headers; a key inside [run.sweep] is addressed as
// run.sweep.<key>. Lists are comma separated, partition lists semicolon
// separated. '#' starts a comment.

#include <string>
#include <vector>

#include "cavent/dynamics.hpp"
#include "cavent/gaussian_info.hpp"
#include "cavent/model.hpp"

namespace cavent {

enum class RunMode { coupling_sweep, time_scan, steady_point };
enum class OutputFormat { csv, json };

struct NamedPartition {
  std::string name;  ///< as written, e.g. "1234:I,II"
  Partition partition;
};

/// Output column name for a partition: "E_" + name with ':' -> '_' and
/// separators dropped, e.g. "1234:I,II" -> "E_1234_III".
std::string partition_column(const std::string& name);

/// Parses "A:B" where each side lists mode labels separated by commas or
/// spaces. A token that is not a label but consists of digits is read one
/// digit per cavity mode, so "12:34" works for up to nine cavity modes.
NamedPartition parse_partition(const std::string& name,
                               const std::vector<std::string>& mode_labels);

struct SweepSpec {
  double gI_min_rad_s = 0.0;
  double gI_max_rad_s = 0.2e15;
  int gI_samples = 41;
  std::vector<double> gII_list_rad_s = {0.0, 0.05e15, 0.1e15, 0.15e15, 0.2e15};

  std::vector<double> gI_values() const;
};

struct ExperimentSpec {
  RunMode mode = RunMode::steady_point;
  PhysicalConfig config;
  std::vector<NamedPartition> partitions;
  TimeGrid time_grid{0.0, 300.0, 1.0};
  SweepSpec sweep;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
};

inline const std::vector<std::string> kDefaultPartitions = {"12:34", "1234:I,II", "I:II"};

/// Mode labels the config will produce: "1".."M" then "I", "II", ...
std::vector<std::string> mode_labels_for(const PhysicalConfig& config);

/// Parses and validates a config document. Throws ValidationError listing
/// unknown keys, missing required keys, malformed values and every violated
/// physical invariant.
ExperimentSpec parse_config(const std::string& text);

ExperimentSpec load_config(const std::string& path);

}  // namespace cavent
