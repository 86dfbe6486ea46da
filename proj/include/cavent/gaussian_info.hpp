#pragma once

// Entanglement of Gaussian states from their covariance matrices. Quadrature
// ordering is (x_1, y_1, x_2, y_2, ...) and the vacuum is identity / 2.

#include <Eigen/Dense>

#include <vector>

namespace cavent {

/// Two disjoint, non-empty sets of mode indices (0-based).
struct Partition {
  std::vector<int> side_a;
  std::vector<int> side_b;
};

/// Throws RangeError unless both sides are non-empty, disjoint and below num_modes.
void validate_partition(const Partition& partition, int num_modes);

/// Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode.
Eigen::MatrixXd symplectic_form(int num_modes);

/// Sub-covariance of the listed modes, in the given order.
Eigen::MatrixXd restrict_modes(const Eigen::MatrixXd& v, const std::vector<int>& modes);

/// Flips the sign of the y quadrature of every mode in `modes`.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& v, const std::vector<int>& modes);

/// Symplectic eigenvalues, ascending, one per mode.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& v);

struct PhysicalityReport {
  double min_2nu = 0.0;
  bool pass = false;
};

/// Uncertainty principle check: 2 nu_min >= 1 - 1e-9.
PhysicalityReport check_physical(const Eigen::MatrixXd& v);

/// max(0, -ln(2 nu~_min)) after restricting to the partition and transposing
/// side_b. Values at or below 1e-10 are reported as 0. For bipartitions with a
/// single mode on one side a zero means separable; otherwise it only means no
/// entanglement detectable by partial transposition.
double logarithmic_negativity(const Eigen::MatrixXd& v, const Partition& partition);

}  // namespace cavent
