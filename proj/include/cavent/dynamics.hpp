#pragma once

// Time evolution of first and second moments of the quadratures, the
// stationary covariance, and excitation numbers. Public times are in
// femtoseconds; internally they are converted with SystemModel::model_time.

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "cavent/model.hpp"
#include "cavent/numerics.hpp"

namespace cavent {

struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double time_fs = 0.0;
};

struct TimeGrid {
  double start_fs = 0.0;
  double end_fs = 0.0;
  double step_fs = 1.0;

  /// start, start + step, ... up to end (inclusive within half a step).
  std::vector<double> samples() const;
};

/// Vacuum for the cavity, ground state for the emitters: zero mean, identity / 2.
GaussianState vacuum_state(const SystemModel& model);

/// Evolves a state under one model. Holds the factorized Lyapunov operator
/// and the closed-form driven response so repeated time points are cheap.
class Propagator {
public:
  explicit Propagator(const SystemModel& model);

  /// <u(t)>, exact for sinusoidal pumping (homogeneous part plus resolvent
  /// particular solution).
  Eigen::VectorXd mean(const GaussianState& from, double t_fs) const;

  /// V(t) from the algebraic form K V + V K^T = -D + K W V0 W^T + W V0 W^T K^T + W D W^T.
  Eigen::MatrixXd covariance(const GaussianState& from, double t_fs) const;

  GaussianState evolve(const GaussianState& from, double t_fs) const;

  /// Particular solution of the mean equation at time t (periodic drive response).
  Eigen::VectorXd driven_response(double t_fs) const;

  const SystemModel& model() const { return model_; }

private:
  SystemModel model_;
  numerics::LyapunovOperator<double> lyapunov_;
  // (pump frequency in model units, complex periodic response)
  std::vector<std::pair<double, Eigen::VectorXcd>> drives_;
};

Eigen::VectorXd evolve_mean(const SystemModel& model, const GaussianState& state, double t_fs);

Eigen::MatrixXd evolve_covariance(const SystemModel& model, const GaussianState& state,
                                  double t_fs);

/// Same as evolve_covariance but through quadrature of
///   V(t) = W V0 W^T + int_0^t W(s) D W(s)^T ds
/// with a composite 8-point Gauss-Legendre rule, refined by panel doubling
/// until successive estimates agree to `tolerance` (max norm).
Eigen::MatrixXd evolve_covariance_quadrature(const SystemModel& model,
                                             const GaussianState& state, double t_fs,
                                             double tolerance = 1e-11);

/// Solves K V + V K^T + D = 0. Throws NoSteadyStateError unless K is strictly stable.
Eigen::MatrixXd steady_state_covariance(const SystemModel& model);

/// Mean occupation of one mode. Values in [-1e-9, 0) are clipped to zero.
double excitation_number(const GaussianState& state, int mode_index);

/// How the deviation from the stationary covariance is normalised.
enum class SteadyNorm {
  /// ||V(t) - V_inf|| / ||V(0) - V_inf||: fraction of the transient left.
  initial_deviation,
  /// ||V(t) - V_inf|| / ||V_inf||.
  steady_state,
};

struct SteadyTime {
  bool reached = false;
  double time_fs = 0.0;
  /// Normalised deviation at time_fs (the last sample when not reached).
  double deviation = 0.0;
};

/// First sample of t = 0, 1, 2, 4, ... fs (up to `horizon_fs`) at which the
/// normalised max-norm covariance deviation drops to rel_tol.
SteadyTime time_to_steady(const SystemModel& model, const GaussianState& initial,
                          double rel_tol, SteadyNorm norm = SteadyNorm::initial_deviation,
                          double horizon_fs = 1e4);

}  // namespace cavent
