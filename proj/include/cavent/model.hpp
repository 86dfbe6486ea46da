#pragma once

// Physical parameters of a driven multimode cavity coupled to collective
// emitter modes, and their compilation into the linear quadrature model
//   du/dt = K u + noise + pump(t),   u = (x_1, y_1, ..., x_M, y_M, x_I, y_I, ...).

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cavent {

namespace constants {
inline constexpr double kSpeedOfLight = 2.99792458e8;       // m/s
inline constexpr double kPlanck = 6.62607015e-34;           // J s
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kElectronVolt = 1.602176634e-19;    // J
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
}  // namespace constants

/// Default internal frequency unit: rates are stored in 1e15 rad/s, which makes
/// the natural time unit one femtosecond.
inline constexpr double kDefaultUnitScale = 1e15;

enum class CouplingScheme { full, rwa };

std::string to_string(CouplingScheme scheme);
std::optional<CouplingScheme> parse_scheme(const std::string& text);

struct EmitterLine {
  double omega_rad_s = 0.0;  ///< line centre
  double fwhm_J = 0.0;       ///< full width at half maximum, joules
};

/// Microscopic route to the base coupling: dipole moment and emitter count.
struct DipoleCoupling {
  double dipole_Cm = 0.0;
  double count = 0.0;
};

struct PhysicalConfig {
  double cavity_length_m = 0.0;
  double refractive_index = 1.0;
  double mirror_R1 = 0.0;
  double mirror_R2 = 1.0;
  int num_cavity_modes = 1;
  /// One entry per cavity mode.
  std::vector<double> drive_power_W;
  /// Explicit drive frequencies per mode; empty means resonant (Lambda_m = omega_m).
  std::vector<double> drive_frequency_rad_s;
  std::vector<EmitterLine> emitters;
  /// Base couplings G~_n in rad/s. When empty, derived from `dipoles`.
  std::vector<double> base_coupling_rad_s;
  std::vector<DipoleCoupling> dipoles;
  CouplingScheme scheme = CouplingScheme::full;
};

/// Four modes, 518 nm cavity in water, two bacteriochlorophyll lines, 50 mW
/// per mode and the experimentally realised couplings (3.9e13, 6e13) rad/s.
PhysicalConfig reference_config(int num_cavity_modes = 4);

/// Every violated invariant as a human readable message; empty when valid.
std::vector<std::string> validate_config(const PhysicalConfig& config);

/// Throws ValidationError carrying all messages from validate_config.
void require_valid(const PhysicalConfig& config);

std::vector<double> derive_cavity_frequencies(const PhysicalConfig& config);
double cavity_finesse(double mirror_R1, double mirror_R2);
std::vector<double> derive_kappa(const PhysicalConfig& config);
std::vector<double> derive_gamma(const PhysicalConfig& config);

struct DriveParams {
  std::vector<double> amplitude;  ///< E_m, 1/s
  std::vector<double> frequency;  ///< Lambda_m, rad/s
};
DriveParams derive_drive(const PhysicalConfig& config, const std::vector<double>& kappa);

double derive_base_coupling(double dipole_Cm, double count, const PhysicalConfig& config);

/// G_mn = m * G~_n; rows are cavity modes, columns emitter lines.
Eigen::MatrixXd couplings_from_base(const std::vector<double>& base, int num_cavity_modes);

/// Derived rates, all in SI (rad/s or 1/s).
struct DerivedParams {
  std::vector<double> omega;
  std::vector<double> kappa;
  std::vector<double> gamma;
  std::vector<double> drive_amplitude;
  std::vector<double> drive_frequency;
  std::vector<double> emitter_omega;
  Eigen::MatrixXd coupling;
  double unit_scale = kDefaultUnitScale;
};

DerivedParams derive_params(const PhysicalConfig& config,
                            double unit_scale = kDefaultUnitScale);

/// One pump component, amplitude * cos(frequency * t + phase), model units.
struct PumpTerm {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct SystemModel {
  Eigen::MatrixXd drift;      ///< K
  Eigen::MatrixXd diffusion;  ///< D, diagonal
  std::vector<PumpTerm> pump; ///< one entry per quadrature
  std::vector<std::string> mode_labels;
  int num_cavity_modes = 0;
  int num_emitters = 0;
  double unit_scale = kDefaultUnitScale;
  DerivedParams params;

  int num_modes() const { return num_cavity_modes + num_emitters; }
  Eigen::Index dimension() const { return drift.rows(); }
  /// Converts femtoseconds to the model's time unit (1 / unit_scale seconds).
  double model_time(double t_fs) const { return t_fs * 1e-15 * unit_scale; }
};

/// Roman numerals for emitter modes: I, II, III, ...
std::string emitter_label(int index);

SystemModel build_system(const PhysicalConfig& config,
                         double unit_scale = kDefaultUnitScale);

/// The 2x2 drift block at (row mode, column mode).
Eigen::Matrix2d drift_block(const SystemModel& model, int row_mode, int col_mode);

}  // namespace cavent
