#include "cavent/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavent/errors.hpp"

namespace cavent {

std::string to_string(CouplingScheme scheme) {
  return scheme == CouplingScheme::full ? "full" : "rwa";
}

std::optional<CouplingScheme> parse_scheme(const std::string& text) {
  if (text == "full") return CouplingScheme::full;
  if (text == "rwa") return CouplingScheme::rwa;
  return std::nullopt;
}

PhysicalConfig reference_config(int num_cavity_modes) {
  PhysicalConfig c;
  c.cavity_length_m = 518e-9;
  c.refractive_index = 1.33;
  c.mirror_R1 = 0.5;
  c.mirror_R2 = 1.0;
  c.num_cavity_modes = num_cavity_modes;
  c.drive_power_W.assign(static_cast<std::size_t>(num_cavity_modes), 50e-3);
  c.emitters = {{2.5e15, 130e-3 * constants::kElectronVolt},
                {4.1e15, 600e-3 * constants::kElectronVolt}};
  c.base_coupling_rad_s = {3.9e13, 6e13};
  c.scheme = CouplingScheme::full;
  return c;
}

std::vector<std::string> validate_config(const PhysicalConfig& c) {
  std::vector<std::string> out;
  auto bad = [](double v) { return !std::isfinite(v); };

  if (bad(c.cavity_length_m) || c.cavity_length_m <= 0) {
    out.emplace_back("cavity_length must be positive");
  }
  if (bad(c.refractive_index) || c.refractive_index < 1) {
    out.emplace_back("refractive_index must be at least 1");
  }
  if (bad(c.mirror_R1) || c.mirror_R1 <= 0 || c.mirror_R1 >= 1) {
    out.emplace_back("mirror_R1 must lie in (0, 1): the input coupler has to transmit");
  }
  if (bad(c.mirror_R2) || c.mirror_R2 <= 0 || c.mirror_R2 > 1) {
    out.emplace_back("mirror_R2 must lie in (0, 1]");
  }
  if (c.num_cavity_modes < 1) {
    out.emplace_back("cavity modes must be at least 1");
  }
  const auto m = static_cast<std::size_t>(std::max(c.num_cavity_modes, 0));
  if (c.drive_power_W.size() != m) {
    std::ostringstream os;
    os << "drive power needs one entry per cavity mode (" << m << "), got "
       << c.drive_power_W.size();
    out.push_back(os.str());
  }
  for (double p : c.drive_power_W) {
    if (bad(p) || p < 0) {
      out.emplace_back("drive power must be non-negative");
      break;
    }
  }
  if (!c.drive_frequency_rad_s.empty()) {
    if (c.drive_frequency_rad_s.size() != m) {
      out.emplace_back("explicit drive frequencies need one entry per cavity mode");
    }
    for (double f : c.drive_frequency_rad_s) {
      if (bad(f) || f <= 0) {
        out.emplace_back("drive frequencies must be positive");
        break;
      }
    }
  }
  if (c.emitters.empty()) {
    out.emplace_back("at least one emitter line is required");
  }
  for (const auto& e : c.emitters) {
    if (bad(e.omega_rad_s) || e.omega_rad_s <= 0) {
      out.emplace_back("emitter frequency must be positive");
      break;
    }
  }
  for (const auto& e : c.emitters) {
    if (bad(e.fwhm_J) || e.fwhm_J <= 0) {
      out.emplace_back("emitter FWHM must be positive");
      break;
    }
  }
  if (!c.base_coupling_rad_s.empty()) {
    if (c.base_coupling_rad_s.size() != c.emitters.size()) {
      out.emplace_back("base couplings need one entry per emitter line");
    }
    for (double g : c.base_coupling_rad_s) {
      if (bad(g) || g < 0) {
        out.emplace_back("base couplings must be non-negative");
        break;
      }
    }
  } else if (!c.dipoles.empty()) {
    if (c.dipoles.size() != c.emitters.size()) {
      out.emplace_back("dipole moments need one entry per emitter line");
    }
    for (const auto& d : c.dipoles) {
      if (bad(d.dipole_Cm) || d.dipole_Cm <= 0 || bad(d.count) || d.count < 1) {
        out.emplace_back("dipole moments must be positive and emitter count at least 1");
        break;
      }
    }
  } else {
    out.emplace_back("either base couplings or dipole moments must be given");
  }
  return out;
}

void require_valid(const PhysicalConfig& config) {
  const auto problems = validate_config(config);
  if (problems.empty()) return;
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& p : problems) os << "\n  - " << p;
  throw ValidationError(os.str());
}

std::vector<double> derive_cavity_frequencies(const PhysicalConfig& c) {
  const double base = std::numbers::pi * constants::kSpeedOfLight /
                      (c.refractive_index * c.cavity_length_m);
  std::vector<double> omega(static_cast<std::size_t>(c.num_cavity_modes));
  for (std::size_t m = 0; m < omega.size(); ++m) omega[m] = static_cast<double>(m + 1) * base;
  return omega;
}

double cavity_finesse(double r1, double r2) {
  const double product = r1 * r2;
  if (!(product > 0 && product < 1)) {
    throw ValidationError("invalid mirrors: R1*R2 must lie in (0, 1) for the cavity to decay");
  }
  return -2.0 * std::numbers::pi / std::log(product);
}

std::vector<double> derive_kappa(const PhysicalConfig& c) {
  const double finesse = cavity_finesse(c.mirror_R1, c.mirror_R2);
  const double kappa = std::numbers::pi * constants::kSpeedOfLight /
                       (2.0 * finesse * c.refractive_index * c.cavity_length_m);
  return std::vector<double>(static_cast<std::size_t>(c.num_cavity_modes), kappa);
}

std::vector<double> derive_gamma(const PhysicalConfig& c) {
  std::vector<double> gamma;
  gamma.reserve(c.emitters.size());
  for (const auto& e : c.emitters) {
    if (!(e.fwhm_J > 0)) throw ValidationError("emitter FWHM must be positive");
    // coherence time tau = 2h / FWHM, amplitude decay 1 / (2 tau)
    gamma.push_back(e.fwhm_J / (4.0 * constants::kPlanck));
  }
  return gamma;
}

DriveParams derive_drive(const PhysicalConfig& c, const std::vector<double>& kappa) {
  DriveParams d;
  d.frequency = c.drive_frequency_rad_s.empty() ? derive_cavity_frequencies(c)
                                                : c.drive_frequency_rad_s;
  d.amplitude.resize(d.frequency.size());
  for (std::size_t m = 0; m < d.frequency.size(); ++m) {
    d.amplitude[m] =
        std::sqrt(2.0 * c.drive_power_W[m] * kappa[m] / (constants::kHbar * d.frequency[m]));
  }
  return d;
}

double derive_base_coupling(double dipole_Cm, double count, const PhysicalConfig& c) {
  const double n3 = c.refractive_index * c.refractive_index * c.refractive_index;
  const double l4 = std::pow(c.cavity_length_m, 4);
  return dipole_Cm * std::sqrt(constants::kSpeedOfLight * (1.0 - c.mirror_R1) * count /
                               (4.0 * constants::kHbar * n3 * constants::kVacuumPermittivity * l4));
}

Eigen::MatrixXd couplings_from_base(const std::vector<double>& base, int num_cavity_modes) {
  Eigen::MatrixXd g(num_cavity_modes, static_cast<Eigen::Index>(base.size()));
  for (int m = 0; m < num_cavity_modes; ++m) {
    for (std::size_t n = 0; n < base.size(); ++n) {
      g(m, static_cast<Eigen::Index>(n)) = (m + 1) * base[n];
    }
  }
  return g;
}

DerivedParams derive_params(const PhysicalConfig& c, double unit_scale) {
  require_valid(c);
  if (!(unit_scale > 0) || !std::isfinite(unit_scale)) {
    throw ValidationError("unit scale must be positive");
  }
  DerivedParams p;
  p.unit_scale = unit_scale;
  p.omega = derive_cavity_frequencies(c);
  p.kappa = derive_kappa(c);
  p.gamma = derive_gamma(c);
  auto drive = derive_drive(c, p.kappa);
  p.drive_amplitude = std::move(drive.amplitude);
  p.drive_frequency = std::move(drive.frequency);
  for (const auto& e : c.emitters) p.emitter_omega.push_back(e.omega_rad_s);

  std::vector<double> base = c.base_coupling_rad_s;
  if (base.empty()) {
    for (const auto& d : c.dipoles) base.push_back(derive_base_coupling(d.dipole_Cm, d.count, c));
  }
  p.coupling = couplings_from_base(base, c.num_cavity_modes);
  return p;
}

std::string emitter_label(int index) {
  static constexpr std::pair<int, const char*> kNumerals[] = {
      {1000, "M"}, {900, "CM"}, {500, "D"}, {400, "CD"}, {100, "C"}, {90, "XC"}, {50, "L"},
      {40, "XL"},  {10, "X"},   {9, "IX"},  {5, "V"},   {4, "IV"},  {1, "I"}};
  std::string out;
  int value = index + 1;
  for (const auto& [v, s] : kNumerals) {
    while (value >= v) {
      out += s;
      value -= v;
    }
  }
  return out;
}

namespace {

void set_block(Eigen::MatrixXd& k, int row_mode, int col_mode, const Eigen::Matrix2d& b) {
  k.block<2, 2>(2 * row_mode, 2 * col_mode) = b;
}

Eigen::Matrix2d oscillator_block(double decay, double frequency) {
  Eigen::Matrix2d b;
  b << -decay, frequency, -frequency, -decay;
  return b;
}

}  // namespace

SystemModel build_system(const PhysicalConfig& c, double unit_scale) {
  SystemModel model;
  model.params = derive_params(c, unit_scale);
  const auto& p = model.params;
  const int cavities = c.num_cavity_modes;
  const int lines = static_cast<int>(c.emitters.size());
  const int dim = 2 * (cavities + lines);
  model.num_cavity_modes = cavities;
  model.num_emitters = lines;
  model.unit_scale = unit_scale;

  model.drift = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd diag(dim);
  for (int m = 0; m < cavities; ++m) {
    const double kappa = p.kappa[m] / unit_scale;
    set_block(model.drift, m, m, oscillator_block(kappa, p.omega[m] / unit_scale));
    diag.segment<2>(2 * m).setConstant(kappa);
  }
  for (int n = 0; n < lines; ++n) {
    const int mode = cavities + n;
    const double gamma = p.gamma[n] / unit_scale;
    set_block(model.drift, mode, mode, oscillator_block(gamma, p.emitter_omega[n] / unit_scale));
    diag.segment<2>(2 * mode).setConstant(gamma);
  }
  for (int m = 0; m < cavities; ++m) {
    for (int n = 0; n < lines; ++n) {
      const double g = p.coupling(m, n) / unit_scale;
      Eigen::Matrix2d block;
      if (c.scheme == CouplingScheme::full) {
        block << 0, 0, -2 * g, 0;
      } else {
        block << 0, g, -g, 0;
      }
      // Same block in both positions: both y quadratures pick up -2G x of the partner.
      set_block(model.drift, m, cavities + n, block);
      set_block(model.drift, cavities + n, m, block);
    }
  }
  model.diffusion = diag.asDiagonal();

  model.pump.assign(static_cast<std::size_t>(dim), PumpTerm{});
  for (int m = 0; m < cavities; ++m) {
    const double amplitude = std::numbers::sqrt2 * p.drive_amplitude[m] / unit_scale;
    const double frequency = p.drive_frequency[m] / unit_scale;
    model.pump[2 * m] = {amplitude, frequency, 0.0};
    // -sqrt2 E sin(L t) = sqrt2 E cos(L t + pi/2)
    model.pump[2 * m + 1] = {amplitude, frequency, std::numbers::pi / 2};
  }

  for (int m = 0; m < cavities; ++m) model.mode_labels.push_back(std::to_string(m + 1));
  for (int n = 0; n < lines; ++n) model.mode_labels.push_back(emitter_label(n));
  return model;
}

Eigen::Matrix2d drift_block(const SystemModel& model, int row_mode, int col_mode) {
  if (row_mode < 0 || col_mode < 0 || row_mode >= model.num_modes() ||
      col_mode >= model.num_modes()) {
    throw RangeError("drift_block: mode index out of range");
  }
  return model.drift.block<2, 2>(2 * row_mode, 2 * col_mode);
}

}  // namespace cavent
