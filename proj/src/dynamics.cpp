#include "cavent/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "cavent/errors.hpp"

namespace cavent {

namespace {

using DriveList = std::vector<std::pair<double, Eigen::VectorXcd>>;

void require_state_shape(const SystemModel& model, const GaussianState& state) {
  const auto n = model.dimension();
  if (state.mean.size() != n || state.cov.rows() != n || state.cov.cols() != n) {
    throw DimensionError("state dimension does not match the model");
  }
}

// Groups pump terms by frequency and solves (K - i f) z = -a for each group,
// so that Re(z e^{i f t}) is a particular solution of du/dt = K u + p(t).
DriveList drive_responses(const SystemModel& model) {
  const auto n = model.dimension();
  std::vector<std::pair<double, Eigen::VectorXcd>> groups;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& term = model.pump[static_cast<std::size_t>(i)];
    if (term.amplitude == 0.0) continue;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == term.frequency; });
    if (it == groups.end()) {
      groups.emplace_back(term.frequency, Eigen::VectorXcd::Zero(n));
      it = std::prev(groups.end());
    }
    it->second(i) = std::polar(term.amplitude, term.phase);
  }

  DriveList out;
  for (const auto& [f, a] : groups) {
    // Real form of (K - i f I)(zr + i zi) = -(ar + i ai).
    Eigen::MatrixXd block(2 * n, 2 * n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    block << model.drift, f * id, -f * id, model.drift;
    Eigen::VectorXd rhs(2 * n);
    rhs << -a.real(), -a.imag();
    Eigen::VectorXd z;
    try {
      z = numerics::solve_linear(block, rhs);
    } catch (const SingularError& e) {
      throw NumericalError(std::string("drive frequency resonant with an undamped mode: ") +
                           e.what());
    }
    Eigen::VectorXcd response(n);
    response.real() = z.head(n);
    response.imag() = z.tail(n);
    out.emplace_back(f, std::move(response));
  }
  return out;
}

Eigen::VectorXd particular(const DriveList& drives, Eigen::Index n, double t_model) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (const auto& [f, z] : drives) u += (z * std::polar(1.0, f * t_model)).real();
  return u;
}

Eigen::VectorXd mean_with(const SystemModel& model, const DriveList& drives,
                          const GaussianState& from, double t_fs) {
  require_state_shape(model, from);
  if (t_fs == from.time_fs) return from.mean;
  const double t0 = model.model_time(from.time_fs);
  const double t1 = model.model_time(t_fs);
  const Eigen::MatrixXd w = numerics::mat_exp(model.drift, t1 - t0);
  const auto n = model.dimension();
  Eigen::VectorXd u = w * (from.mean - particular(drives, n, t0)) + particular(drives, n, t1);
  if (!u.allFinite()) throw NumericalError("mean evolution produced non-finite values");
  return u;
}

Eigen::MatrixXd covariance_with(const SystemModel& model,
                                const numerics::LyapunovOperator<double>& lyapunov,
                                const GaussianState& from, double t_fs) {
  require_state_shape(model, from);
  if (t_fs == from.time_fs) return from.cov;
  const Eigen::MatrixXd w = numerics::mat_exp(model.drift, model.model_time(t_fs - from.time_fs));
  Eigen::MatrixXd carried = w * from.cov * w.transpose();
  carried = (0.5 * (carried + carried.transpose())).eval();
  Eigen::MatrixXd injected = w * model.diffusion * w.transpose();
  injected = (0.5 * (injected + injected.transpose())).eval();
  const Eigen::MatrixXd kc = model.drift * carried;
  const Eigen::MatrixXd rhs = -model.diffusion + kc + kc.transpose() + injected;
  Eigen::MatrixXd v = lyapunov.solve(rhs);
  if (!v.allFinite()) throw NumericalError("covariance evolution produced non-finite values");
  return v;
}

}  // namespace

std::vector<double> TimeGrid::samples() const {
  if (!(step_fs > 0) || !(start_fs <= end_fs) || !std::isfinite(end_fs)) {
    throw ValidationError("time grid needs start <= end and a positive step");
  }
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((end_fs - start_fs) / step_fs + 0.5));
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) out.push_back(start_fs + static_cast<double>(i) * step_fs);
  return out;
}

GaussianState vacuum_state(const SystemModel& model) {
  const auto n = model.dimension();
  return {Eigen::VectorXd::Zero(n), 0.5 * Eigen::MatrixXd::Identity(n, n), 0.0};
}

Propagator::Propagator(const SystemModel& model)
    : model_(model), lyapunov_(model.drift), drives_(drive_responses(model)) {}

Eigen::VectorXd Propagator::driven_response(double t_fs) const {
  return particular(drives_, model_.dimension(), model_.model_time(t_fs));
}

Eigen::VectorXd Propagator::mean(const GaussianState& from, double t_fs) const {
  return mean_with(model_, drives_, from, t_fs);
}

Eigen::MatrixXd Propagator::covariance(const GaussianState& from, double t_fs) const {
  return covariance_with(model_, lyapunov_, from, t_fs);
}

GaussianState Propagator::evolve(const GaussianState& from, double t_fs) const {
  return {mean(from, t_fs), covariance(from, t_fs), t_fs};
}

Eigen::VectorXd evolve_mean(const SystemModel& model, const GaussianState& state,
                            double t_fs) {
  return mean_with(model, drive_responses(model), state, t_fs);
}

Eigen::MatrixXd evolve_covariance(const SystemModel& model, const GaussianState& state,
                                  double t_fs) {
  require_state_shape(model, state);
  if (t_fs == state.time_fs) return state.cov;
  return covariance_with(model, numerics::LyapunovOperator<double>(model.drift), state, t_fs);
}

Eigen::MatrixXd evolve_covariance_quadrature(const SystemModel& model,
                                             const GaussianState& state, double t_fs,
                                             double tolerance) {
  static constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290,
                                                   0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873,
                                                     0.2223810344533745, 0.1012285362903763};
  require_state_shape(model, state);
  if (t_fs == state.time_fs) return state.cov;
  const double span = model.model_time(t_fs - state.time_fs);
  if (!(span > 0)) throw ValidationError("quadrature propagation needs t > state.time");

  const Eigen::MatrixXd& k = model.drift;
  const Eigen::MatrixXd& d = model.diffusion;
  const auto n = model.dimension();

  // Integrand W(s) D W(s)^T, with the substitution s = t - t' so that only
  // decaying exponentials appear.
  auto integrate = [&](long panels) {
    const double h = span / static_cast<double>(panels);
    std::array<Eigen::MatrixXd, 8> node_exp;
    std::array<double, 8> weight{};
    for (std::size_t j = 0; j < 4; ++j) {
      node_exp[2 * j] = numerics::mat_exp(k, 0.5 * h * (1.0 - kNodes[j]));
      node_exp[2 * j + 1] = numerics::mat_exp(k, 0.5 * h * (1.0 + kNodes[j]));
      weight[2 * j] = weight[2 * j + 1] = 0.5 * h * kWeights[j];
    }
    const Eigen::MatrixXd step = numerics::mat_exp(k, h);
    Eigen::MatrixXd start = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (long p = 0; p < panels; ++p) {
      for (std::size_t j = 0; j < 8; ++j) {
        const Eigen::MatrixXd w = node_exp[j] * start;
        sum.noalias() += weight[j] * (w * d * w.transpose());
      }
      start = step * start;
    }
    return sum;
  };

  long panels = std::max(1L, static_cast<long>(std::ceil(span * k.cwiseAbs().colwise().sum().maxCoeff())));
  Eigen::MatrixXd previous = integrate(panels);
  Eigen::MatrixXd current;
  for (int level = 0;; ++level) {
    panels *= 2;
    current = integrate(panels);
    if ((current - previous).cwiseAbs().maxCoeff() <= tolerance) break;
    if (level >= 12) throw NumericalError("covariance quadrature did not converge");
    previous = std::move(current);
  }
  const Eigen::MatrixXd w = numerics::mat_exp(k, span);
  Eigen::MatrixXd v = w * state.cov * w.transpose() + current;
  return 0.5 * (v + v.transpose());
}

Eigen::MatrixXd steady_state_covariance(const SystemModel& model) {
  const auto spectrum = numerics::eigenvalues(model.drift);
  std::ostringstream offending;
  bool stable = true;
  for (const auto& z : spectrum) {
    if (!(z.real() < 0)) {
      stable = false;
      offending << " " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
  }
  if (!stable) {
    throw NoSteadyStateError("drift matrix is not strictly stable; eigenvalues with "
                             "non-negative real part:" + offending.str());
  }
  return numerics::solve_lyapunov(model.drift, -model.diffusion);
}

double excitation_number(const GaussianState& state, int mode_index) {
  if (mode_index < 0 || 2 * mode_index + 1 >= state.cov.rows() ||
      2 * mode_index + 1 >= state.mean.size()) {
    throw RangeError("excitation_number: mode index out of range");
  }
  const auto i = 2 * mode_index;
  const double n = 0.5 * (state.cov(i, i) + state.cov(i + 1, i + 1) +
                          state.mean(i) * state.mean(i) + state.mean(i + 1) * state.mean(i + 1) -
                          1.0);
  if (n < -1e-9) {
    std::ostringstream os;
    os << "excitation_number: negative occupation " << n << " for mode " << mode_index;
    throw PhysicalityError(os.str());
  }
  return std::max(n, 0.0);
}

SteadyTime time_to_steady(const SystemModel& model, const GaussianState& initial,
                          double rel_tol, SteadyNorm norm, double horizon_fs) {
  if (!(rel_tol > 0)) throw ValidationError("time_to_steady: rel_tol must be positive");
  const Eigen::MatrixXd steady = steady_state_covariance(model);
  const Propagator propagator(model);

  const double floor = numerics::kTolerances.absolute * std::max(1.0, steady.cwiseAbs().maxCoeff());
  const double initial_gap = (initial.cov - steady).cwiseAbs().maxCoeff();
  double scale = 0.0;
  if (norm == SteadyNorm::initial_deviation) {
    if (initial_gap <= floor) return {true, initial.time_fs, 0.0};
    scale = initial_gap;
  } else {
    scale = steady.cwiseAbs().maxCoeff();
  }

  SteadyTime result;
  double offset = 0.0;
  while (offset <= horizon_fs) {
    const double t = initial.time_fs + offset;
    const double gap = (propagator.covariance(initial, t) - steady).cwiseAbs().maxCoeff();
    result.time_fs = t;
    result.deviation = gap / scale;
    if (gap <= rel_tol * scale || gap <= floor) {
      result.reached = true;
      return result;
    }
    offset = offset == 0.0 ? 1.0 : 2.0 * offset;
  }
  return result;
}

}  // namespace cavent
