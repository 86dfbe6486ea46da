#include "cavent/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "cavent/errors.hpp"
#include "cavent/numerics.hpp"

namespace cavent {

namespace {

std::vector<std::string> names_of(const std::vector<NamedPartition>& partitions) {
  std::vector<std::string> out;
  for (const auto& p : partitions) out.push_back(p.name);
  return out;
}

std::vector<double> base_couplings(const PhysicalConfig& c) {
  if (!c.base_coupling_rad_s.empty()) return c.base_coupling_rad_s;
  std::vector<double> out;
  for (const auto& d : c.dipoles) out.push_back(derive_base_coupling(d.dipole_Cm, d.count, c));
  return out;
}

SweepRow sweep_point(const ExperimentSpec& spec, double gI, double gII) {
  SweepRow row;
  row.gI_rad_s = gI;
  row.gII_rad_s = gII;
  const SystemModel model = build_system(with_base_couplings(spec.config, gI, gII));
  row.stable = numerics::spectral_abscissa(model.drift) < 0.0;
  if (!row.stable) return row;
  const Eigen::MatrixXd v = steady_state_covariance(model);
  row.min_2nu = check_physical(v).min_2nu;
  for (const auto& p : spec.partitions) {
    row.entanglement.push_back(logarithmic_negativity(v, p.partition));
  }
  return row;
}

}  // namespace

PhysicalConfig with_base_couplings(const PhysicalConfig& config, double gI, double gII) {
  PhysicalConfig c = config;
  c.base_coupling_rad_s = base_couplings(config);
  c.dipoles.clear();
  if (c.base_coupling_rad_s.size() < 2) {
    throw ValidationError("coupling sweep needs at least two emitter lines");
  }
  c.base_coupling_rad_s[0] = gI;
  c.base_coupling_rad_s[1] = gII;
  return c;
}

SweepResult run_coupling_sweep(const ExperimentSpec& spec, int workers) {
  std::vector<std::pair<double, double>> grid;
  const auto gI = spec.sweep.gI_values();
  for (double gII : spec.sweep.gII_list_rad_s) {
    for (double g : gI) grid.emplace_back(g, gII);
  }

  SweepResult result;
  result.partition_names = names_of(spec.partitions);
  result.rows.resize(grid.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        result.rows[i] = sweep_point(spec, grid[i].first, grid[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.size();
      }
    }
  };

  const int width = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(grid.size(), 1)));
  if (width == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < width; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

TimeSeries run_time_scan(const ExperimentSpec& spec) {
  TimeSeries series;
  series.partition_names = names_of(spec.partitions);
  series.mode_labels = mode_labels_for(spec.config);

  const SystemModel model = build_system(spec.config);
  const GaussianState vacuum = vacuum_state(model);
  std::optional<Propagator> propagator;
  try {
    propagator.emplace(model);
  } catch (const Error& e) {
    series.error = e.what();
    return series;
  }

  for (double t : spec.time_grid.samples()) {
    try {
      const GaussianState state = propagator->evolve(vacuum, t);
      TimeRow row;
      row.t_fs = t;
      for (const auto& p : spec.partitions) {
        row.entanglement.push_back(logarithmic_negativity(state.cov, p.partition));
      }
      for (int k = 0; k < model.num_modes(); ++k) {
        row.excitation.push_back(excitation_number(state, k));
      }
      series.rows.push_back(std::move(row));
    } catch (const Error& e) {
      series.error = "at t = " + std::to_string(t) + " fs: " + e.what();
      break;
    }
  }
  return series;
}

SteadyReport run_steady_point(const ExperimentSpec& spec) {
  SteadyReport report;
  report.partition_names = names_of(spec.partitions);
  report.mode_labels = mode_labels_for(spec.config);
  const auto base = base_couplings(spec.config);
  report.gI_rad_s = base.size() > 0 ? base[0] : 0.0;
  report.gII_rad_s = base.size() > 1 ? base[1] : 0.0;

  const SystemModel model = build_system(spec.config);
  const Eigen::MatrixXd v = steady_state_covariance(model);
  report.min_2nu = check_physical(v).min_2nu;
  for (const auto& p : spec.partitions) {
    report.entanglement.push_back(logarithmic_negativity(v, p.partition));
  }
  const GaussianState vacuum = vacuum_state(model);
  report.time_to_steady = time_to_steady(model, vacuum, kSteadyRelTol);

  report.max_excitation.assign(static_cast<std::size_t>(model.num_modes()), 0.0);
  const Propagator propagator(model);
  for (double t : spec.time_grid.samples()) {
    const GaussianState state = propagator.evolve(vacuum, t);
    for (int k = 0; k < model.num_modes(); ++k) {
      report.max_excitation[k] = std::max(report.max_excitation[k], excitation_number(state, k));
    }
  }
  return report;
}

}  // namespace cavent
