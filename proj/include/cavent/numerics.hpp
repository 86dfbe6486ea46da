#pragma once

// Dense real-matrix kernels: matrix exponential, eigenvalues, linear and
// Lyapunov solves. Everything here is a template over the scalar type and
// accepts any Eigen dense expression.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "cavent/errors.hpp"

namespace cavent::numerics {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Spectrum = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Shared residual and conditioning thresholds.
struct Tolerances {
  double absolute = 1e-12;
  double relative = 1e-9;
  /// Reciprocal condition number below which a factorization is treated as singular.
  double min_rcond = 1e-13;
};

inline constexpr Tolerances kTolerances{};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* op) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    std::ostringstream os;
    os << op << ": expected a non-empty square matrix, got " << a.rows() << "x"
       << a.cols();
    throw DimensionError(os.str());
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* op) {
  if (!a.allFinite()) {
    throw NumericalError(std::string(op) + ": non-finite entry in input");
  }
}

// Pade coefficients b_0..b_m of the [m/m] approximant to exp.
inline constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
inline constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
inline constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200.,
                                                 25200.,    1512.,    56.,      1.};
inline constexpr std::array<double, 10> kPade9 = {
    17643225600., 8821612800., 2075673600., 302702400., 30270240.,
    2162160.,     110880.,     3960.,       90.,        1.};
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

// Largest 1-norms for which the degree-m approximant is accurate to unit
// roundoff in double precision.
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

template <typename Scalar, std::size_t N>
Mat<Scalar> pade_ratio(const Mat<Scalar>& a, const std::array<double, N>& b) {
  const Eigen::Index n = a.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const Mat<Scalar> a2 = a * a;
  Mat<Scalar> odd = Scalar(b[1]) * id;
  Mat<Scalar> even = Scalar(b[0]) * id;
  Mat<Scalar> power = id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += Scalar(b[k]) * power;
    if (k + 1 < N) odd += Scalar(b[k + 1]) * power;
  }
  const Mat<Scalar> u = a * odd;
  return (even - u).partialPivLu().solve(even + u);
}

template <typename Scalar>
Mat<Scalar> pade13_ratio(const Mat<Scalar>& a) {
  const auto& b = kPade13;
  const Eigen::Index n = a.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const Mat<Scalar> a2 = a * a;
  const Mat<Scalar> a4 = a2 * a2;
  const Mat<Scalar> a6 = a4 * a2;
  const Mat<Scalar> u =
      a * (a6 * (Scalar(b[13]) * a6 + Scalar(b[11]) * a4 + Scalar(b[9]) * a2) +
           Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 + Scalar(b[1]) * id);
  const Mat<Scalar> v = a6 * (Scalar(b[12]) * a6 + Scalar(b[10]) * a4 + Scalar(b[8]) * a2) +
                        Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 +
                        Scalar(b[0]) * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

/// exp(A t) by scaling and squaring around a diagonal Pade approximant.
/// exp(A * 0) is the identity exactly.
template <typename Derived>
Mat<typename Derived::Scalar> mat_exp(const Eigen::MatrixBase<Derived>& a,
                                      typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "mat_exp");
  if (!std::isfinite(static_cast<double>(t))) {
    throw NumericalError("mat_exp: non-finite time");
  }
  detail::require_finite(a, "mat_exp");
  const Eigen::Index n = a.rows();
  if (t == Scalar(0)) return Mat<Scalar>::Identity(n, n);

  Mat<Scalar> at = a * t;
  const double norm1 = static_cast<double>(at.cwiseAbs().colwise().sum().maxCoeff());

  if (norm1 <= detail::kTheta3) return detail::pade_ratio<Scalar>(at, detail::kPade3);
  if (norm1 <= detail::kTheta5) return detail::pade_ratio<Scalar>(at, detail::kPade5);
  if (norm1 <= detail::kTheta7) return detail::pade_ratio<Scalar>(at, detail::kPade7);
  if (norm1 <= detail::kTheta9) return detail::pade_ratio<Scalar>(at, detail::kPade9);

  int squarings = 0;
  if (norm1 > detail::kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / detail::kTheta13)));
    at /= std::ldexp(Scalar(1), squarings);
  }
  Mat<Scalar> result = detail::pade13_ratio<Scalar>(at);
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.allFinite()) throw NumericalError("mat_exp: overflow");
  return result;
}

/// All eigenvalues, unordered. Conjugate pairs for real input.
template <typename Derived>
Spectrum<typename Derived::Scalar> eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "eigenvalues");
  detail::require_finite(a, "eigenvalues");
  Eigen::EigenSolver<Mat<Scalar>> solver(a.eval(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigenvalues: QR iteration did not converge for " << a.rows() << "x"
       << a.cols() << " matrix (max |entry| = " << a.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  return solver.eigenvalues();
}

/// Largest real part of the spectrum. Strictly negative means strictly stable.
template <typename Derived>
typename Derived::Scalar spectral_abscissa(const Eigen::MatrixBase<Derived>& a) {
  return eigenvalues(a).real().maxCoeff();
}

/// LU factorization with a conditioning check, reusable across right-hand sides.
template <typename Scalar>
class LinearSolver {
public:
  template <typename Derived>
  explicit LinearSolver(const Eigen::MatrixBase<Derived>& a,
                        const Tolerances& tol = kTolerances) {
    detail::require_square(a, "solve_linear");
    detail::require_finite(a, "solve_linear");
    lu_.compute(a.eval());
    rcond_ = static_cast<double>(lu_.rcond());
    if (!(rcond_ >= tol.min_rcond)) {
      std::ostringstream os;
      os << "solve_linear: matrix is singular or ill-conditioned (estimated condition "
         << (rcond_ > 0 ? 1.0 / rcond_ : INFINITY) << ")";
      throw SingularError(os.str());
    }
  }

  template <typename Derived>
  Mat<Scalar> solve(const Eigen::MatrixBase<Derived>& b) const {
    if (b.rows() != lu_.rows()) {
      throw DimensionError("solve_linear: right-hand side has wrong length");
    }
    detail::require_finite(b, "solve_linear");
    return lu_.solve(b);
  }

  Eigen::Index size() const { return lu_.rows(); }
  double rcond() const { return rcond_; }

private:
  Eigen::PartialPivLU<Mat<Scalar>> lu_;
  double rcond_ = 0.0;
};

/// Solves A x = b.
template <typename DerivedA, typename DerivedB>
Vec<typename DerivedA::Scalar> solve_linear(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  if (b.cols() != 1) throw DimensionError("solve_linear: b must be a vector");
  return LinearSolver<typename DerivedA::Scalar>(a).solve(b);
}

/// The operator V -> K V + V K^T, vectorized (column-major) into an n^2 x n^2
/// system and factorized once, so that many right-hand sides share one LU.
template <typename Scalar>
class LyapunovOperator {
public:
  template <typename Derived>
  explicit LyapunovOperator(const Eigen::MatrixBase<Derived>& k)
      : n_(k.rows()), solver_(factorize(k)) {}

  /// V with K V + V K^T = rhs. Symmetric right-hand sides give symmetric output.
  template <typename Derived>
  Mat<Scalar> solve(const Eigen::MatrixBase<Derived>& rhs) const {
    if (rhs.rows() != n_ || rhs.cols() != n_) {
      throw DimensionError("solve_lyapunov: right-hand side shape mismatch");
    }
    const Mat<Scalar> r = rhs;
    const Vec<Scalar> x = solver_.solve(Eigen::Map<const Vec<Scalar>>(r.data(), n_ * n_));
    Mat<Scalar> v = Eigen::Map<const Mat<Scalar>>(x.data(), n_, n_);
    const Scalar scale = std::max(Scalar(1), r.cwiseAbs().maxCoeff());
    if ((r - r.transpose()).cwiseAbs().maxCoeff() <= Scalar(kTolerances.absolute) * scale) {
      v = (Scalar(0.5) * (v + v.transpose())).eval();
    }
    return v;
  }

  Eigen::Index dimension() const { return n_; }

private:
  template <typename Derived>
  static LinearSolver<Scalar> factorize(const Eigen::MatrixBase<Derived>& k) {
    try {
      return LinearSolver<Scalar>(kronecker_sum(k));
    } catch (const SingularError& e) {
      throw SingularError(std::string("solve_lyapunov: two eigenvalues of K sum to "
                                      "(nearly) zero; ") + e.what());
    }
  }

  template <typename Derived>
  static Mat<Scalar> kronecker_sum(const Eigen::MatrixBase<Derived>& k) {
    detail::require_square(k, "solve_lyapunov");
    detail::require_finite(k, "solve_lyapunov");
    const Eigen::Index n = k.rows();
    Mat<Scalar> big = Mat<Scalar>::Zero(n * n, n * n);
    // (K V)_{ij} = sum_m K_im V_mj ; (V K^T)_{ij} = sum_m V_im K_jm.
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index row = i + j * n;
        for (Eigen::Index m = 0; m < n; ++m) {
          big(row, m + j * n) += k(i, m);
          big(row, i + m * n) += k(j, m);
        }
      }
    }
    return big;
  }

  Eigen::Index n_;
  LinearSolver<Scalar> solver_;
};

/// V with K V + V K^T = rhs.
template <typename DerivedK, typename DerivedR>
Mat<typename DerivedK::Scalar> solve_lyapunov(const Eigen::MatrixBase<DerivedK>& k,
                                              const Eigen::MatrixBase<DerivedR>& rhs) {
  if (rhs.rows() != k.rows() || rhs.cols() != k.cols()) {
    throw DimensionError("solve_lyapunov: K and RHS must be the same square size");
  }
  return LyapunovOperator<typename DerivedK::Scalar>(k).solve(rhs);
}

}  // namespace cavent::numerics
