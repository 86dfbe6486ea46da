#include "cavent/gaussian_info.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "cavent/errors.hpp"
#include "cavent/numerics.hpp"

namespace cavent {

namespace {

constexpr double kPairingTolerance = 1e-9;
constexpr double kPhysicalTolerance = 1e-9;
constexpr double kNegativityFloor = 1e-10;

void require_covariance_shape(const Eigen::MatrixXd& v) {
  if (v.rows() < 2 || v.rows() != v.cols() || v.rows() % 2 != 0) {
    std::ostringstream os;
    os << "covariance matrix must be square with even dimension, got " << v.rows() << "x"
       << v.cols();
    throw DimensionError(os.str());
  }
}

int mode_count(const Eigen::MatrixXd& v) { return static_cast<int>(v.rows() / 2); }

// With 2V = L L^T, Omega V is similar to L^T Omega L / 2, so the spectrum of
// the Hermitian matrix i L^T Omega L is {+-2 nu}. Returns |eigenvalues| / 2 in
// ascending order, or nothing when V is not positive definite.
std::vector<double> positive_definite_spectrum(const Eigen::MatrixXd& v, int z) {
  const Eigen::LLT<Eigen::MatrixXd> llt(2.0 * v);
  if (llt.info() != Eigen::Success) return {};
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd a = l.transpose() * symplectic_form(z) * l;
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return {};
  std::vector<double> out;
  for (double e : solver.eigenvalues()) out.push_back(0.5 * std::abs(e));
  std::sort(out.begin(), out.end());
  return out;
}

// Exact on the vacuum, but the real Schur iteration can stall on nearly
// repeated complex pairs; positive_definite_spectrum covers that case.
std::vector<double> general_spectrum(const Eigen::MatrixXd& v, int z) {
  const auto spectrum = numerics::eigenvalues(Eigen::MatrixXd(symplectic_form(z) * v));
  std::vector<double> out;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) out.push_back(std::abs(spectrum(i).imag()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void validate_partition(const Partition& p, int num_modes) {
  if (p.side_a.empty() || p.side_b.empty()) {
    throw RangeError("partition sides must be non-empty");
  }
  std::vector<int> all = p.side_a;
  all.insert(all.end(), p.side_b.begin(), p.side_b.end());
  for (int m : all) {
    if (m < 0 || m >= num_modes) {
      std::ostringstream os;
      os << "partition refers to mode " << m << " but only " << num_modes << " modes exist";
      throw RangeError(os.str());
    }
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw RangeError("partition sides must be disjoint and free of repeats");
  }
}

Eigen::MatrixXd symplectic_form(int num_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
  for (int k = 0; k < num_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd restrict_modes(const Eigen::MatrixXd& v, const std::vector<int>& modes) {
  require_covariance_shape(v);
  const int total = mode_count(v);
  for (int m : modes) {
    if (m < 0 || m >= total) throw RangeError("restrict: mode index out of range");
  }
  const auto z = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd out(2 * z, 2 * z);
  for (Eigen::Index j = 0; j < z; ++j) {
    for (Eigen::Index k = 0; k < z; ++k) {
      out.block<2, 2>(2 * j, 2 * k) = v.block<2, 2>(2 * modes[j], 2 * modes[k]);
    }
  }
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& v, const std::vector<int>& modes) {
  require_covariance_shape(v);
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(v.rows());
  for (int m : modes) {
    if (m < 0 || m >= mode_count(v)) throw RangeError("partial_transpose: mode out of range");
    sign(2 * m + 1) = -1.0;
  }
  return sign.asDiagonal() * v * sign.asDiagonal();
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& v) {
  require_covariance_shape(v);
  const int z = mode_count(v);
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericalError("symplectic_eigenvalues: covariance matrix is not symmetric");
  }
  std::vector<double> magnitudes;
  try {
    magnitudes = general_spectrum(v, z);
  } catch (const NumericalError&) {
    magnitudes = positive_definite_spectrum(v, z);
    if (magnitudes.empty()) throw;
  }

  Eigen::VectorXd nu(z);
  for (int k = 0; k < z; ++k) {
    const double a = magnitudes[2 * k];
    const double b = magnitudes[2 * k + 1];
    if (std::abs(a - b) > kPairingTolerance * std::max(1.0, b)) {
      std::ostringstream os;
      os << "symplectic_eigenvalues: unpaired spectrum (" << a << " vs " << b << ")";
      throw NumericalError(os.str());
    }
    nu(k) = 0.5 * (a + b);
  }
  return nu;
}

PhysicalityReport check_physical(const Eigen::MatrixXd& v) {
  PhysicalityReport r;
  r.min_2nu = 2.0 * symplectic_eigenvalues(v).minCoeff();
  r.pass = r.min_2nu >= 1.0 - kPhysicalTolerance;
  return r;
}

double logarithmic_negativity(const Eigen::MatrixXd& v, const Partition& partition) {
  require_covariance_shape(v);
  validate_partition(partition, mode_count(v));

  std::vector<int> modes = partition.side_a;
  modes.insert(modes.end(), partition.side_b.begin(), partition.side_b.end());
  const Eigen::MatrixXd sub = restrict_modes(v, modes);

  const auto physical = check_physical(sub);
  if (!physical.pass) {
    std::ostringstream os;
    os << "logarithmic_negativity: unphysical covariance (2 nu_min = " << physical.min_2nu << ")";
    throw PhysicalityError(os.str());
  }

  std::vector<int> flipped;
  const int offset = static_cast<int>(partition.side_a.size());
  for (std::size_t i = 0; i < partition.side_b.size(); ++i) {
    flipped.push_back(offset + static_cast<int>(i));
  }
  const double nu_min = symplectic_eigenvalues(partial_transpose(sub, flipped)).minCoeff();
  const double e = -std::log(2.0 * nu_min);
  return e > kNegativityFloor ? e : 0.0;
}

}  // namespace cavent
