#include "cavent/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cavent/errors.hpp"

namespace cavent {

namespace {

const std::set<std::string> kKnownKeys = {
    "cavity.length_m",     "cavity.n_r",           "cavity.R1",
    "cavity.R2",           "cavity.modes",         "drive.power_W",
    "drive.resonant",      "drive.lambda_rad_s",   "emitters.omega_rad_s",
    "emitters.fwhm_meV",   "emitters.gtilde_Hz",   "emitters.dipole_Cm",
    "emitters.count",      "run.mode",             "run.scheme",
    "run.partitions",      "run.time_fs.start",    "run.time_fs.end",
    "run.time_fs.step",    "run.sweep.gI_min_Hz",  "run.sweep.gI_max_Hz",
    "run.sweep.gI_samples", "run.sweep.gII_list_Hz"};

const std::vector<std::string> kRequiredKeys = {
    "cavity.length_m", "cavity.n_r", "cavity.R1", "cavity.R2", "cavity.modes",
    "emitters.omega_rad_s", "emitters.fwhm_meV"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Collects problems instead of failing on the first one.
class Reader {
public:
  explicit Reader(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return parse_number(key, values_.at(key));
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(values_.at(key), ',')) out.push_back(parse_number(key, item));
    if (out.empty()) problem(key + ": expected a comma separated list of numbers");
    return out;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    problem(key + ": expected true or false, got '" + v + "'");
    return fallback;
  }

  int integer(const std::string& key, int fallback) {
    const double v = number(key, fallback);
    if (std::isnan(v)) return fallback;
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      problem(key + ": expected an integer");
      return fallback;
    }
    return static_cast<int>(v);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? values_.at(key) : fallback;
  }

  void problem(std::string message) { problems_.push_back(std::move(message)); }
  std::vector<std::string>& problems() { return problems_; }

private:
  double parse_number(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
      problem(key + ": '" + text + "' is not a finite number");
      return NAN;
    }
    return v;
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string> problems_;
};

[[noreturn]] void fail(const std::vector<std::string>& problems) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& p : problems) os << "\n  - " << p;
  throw ValidationError(os.str());
}

std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> values;
  std::vector<std::string> problems;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!kKnownKeys.count(full)) {
      problems.push_back("unknown key '" + full + "'");
      continue;
    }
    if (values.count(full)) {
      problems.push_back("duplicate key '" + full + "'");
      continue;
    }
    values[full] = trim(line.substr(eq + 1));
  }
  if (!problems.empty()) fail(problems);
  return values;
}

}  // namespace

std::string partition_column(const std::string& name) {
  std::string out = "E_";
  for (char c : name) {
    if (c == ':') {
      out += '_';
    } else if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
      out += c;
    }
  }
  return out;
}

NamedPartition parse_partition(const std::string& name,
                               const std::vector<std::string>& labels) {
  const auto colon = name.find(':');
  if (colon == std::string::npos || name.find(':', colon + 1) != std::string::npos) {
    throw RangeError("partition '" + name + "' must have the form A:B");
  }
  auto resolve_side = [&](const std::string& side) {
    std::vector<int> modes;
    std::string normalized = side;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string token;
    while (in >> token) {
      const auto it = std::find(labels.begin(), labels.end(), token);
      if (it != labels.end()) {
        modes.push_back(static_cast<int>(it - labels.begin()));
        continue;
      }
      const bool digits = std::all_of(token.begin(), token.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (!digits) throw RangeError("partition '" + name + "': unknown mode '" + token + "'");
      for (char c : token) {
        const auto d = std::find(labels.begin(), labels.end(), std::string(1, c));
        if (d == labels.end()) {
          throw RangeError("partition '" + name + "': unknown mode '" + std::string(1, c) + "'");
        }
        modes.push_back(static_cast<int>(d - labels.begin()));
      }
    }
    return modes;
  };
  NamedPartition out{name, {resolve_side(name.substr(0, colon)), resolve_side(name.substr(colon + 1))}};
  validate_partition(out.partition, static_cast<int>(labels.size()));
  return out;
}

std::vector<double> SweepSpec::gI_values() const {
  std::vector<double> out;
  if (gI_samples == 1) return {gI_min_rad_s};
  for (int i = 0; i < gI_samples; ++i) {
    out.push_back(gI_min_rad_s + (gI_max_rad_s - gI_min_rad_s) * i / (gI_samples - 1));
  }
  return out;
}

std::vector<std::string> mode_labels_for(const PhysicalConfig& config) {
  std::vector<std::string> labels;
  for (int m = 0; m < config.num_cavity_modes; ++m) labels.push_back(std::to_string(m + 1));
  for (std::size_t n = 0; n < config.emitters.size(); ++n) {
    labels.push_back(emitter_label(static_cast<int>(n)));
  }
  return labels;
}

ExperimentSpec parse_config(const std::string& text) {
  Reader r(tokenize(text));

  std::vector<std::string> missing;
  for (const auto& key : kRequiredKeys) {
    if (!r.has(key)) missing.push_back(key);
  }
  if (!r.has("emitters.gtilde_Hz") && !r.has("emitters.dipole_Cm")) {
    missing.push_back("emitters.gtilde_Hz (or emitters.dipole_Cm with emitters.count)");
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& k : missing) joined += (joined.empty() ? "" : ", ") + k;
    fail({"missing required keys: " + joined});
  }

  ExperimentSpec spec;
  auto& c = spec.config;
  c.cavity_length_m = r.number("cavity.length_m", NAN);
  c.refractive_index = r.number("cavity.n_r", NAN);
  c.mirror_R1 = r.number("cavity.R1", NAN);
  c.mirror_R2 = r.number("cavity.R2", NAN);
  c.num_cavity_modes = r.integer("cavity.modes", 0);
  const auto m = static_cast<std::size_t>(std::max(c.num_cavity_modes, 0));

  c.drive_power_W = r.numbers("drive.power_W", {50e-3});
  if (c.drive_power_W.size() == 1 && m > 1) c.drive_power_W.assign(m, c.drive_power_W.front());
  const bool resonant = r.boolean("drive.resonant", !r.has("drive.lambda_rad_s"));
  if (r.has("drive.lambda_rad_s")) {
    if (resonant) r.problem("drive.resonant = true conflicts with drive.lambda_rad_s");
    c.drive_frequency_rad_s = r.numbers("drive.lambda_rad_s", {});
  } else if (!resonant) {
    r.problem("drive.resonant = false requires drive.lambda_rad_s");
  }

  const auto omegas = r.numbers("emitters.omega_rad_s", {});
  const auto fwhm = r.numbers("emitters.fwhm_meV", {});
  if (omegas.size() != fwhm.size()) {
    r.problem("emitters.omega_rad_s and emitters.fwhm_meV must have the same length");
  }
  for (std::size_t n = 0; n < std::min(omegas.size(), fwhm.size()); ++n) {
    c.emitters.push_back({omegas[n], fwhm[n] * 1e-3 * constants::kElectronVolt});
  }
  if (r.has("emitters.gtilde_Hz")) {
    if (r.has("emitters.dipole_Cm")) {
      r.problem("give either emitters.gtilde_Hz or emitters.dipole_Cm, not both");
    }
    c.base_coupling_rad_s = r.numbers("emitters.gtilde_Hz", {});
  } else if (r.has("emitters.dipole_Cm")) {
    if (!r.has("emitters.count")) r.problem("emitters.dipole_Cm requires emitters.count");
    const double count = r.number("emitters.count", NAN);
    for (double mu : r.numbers("emitters.dipole_Cm", {})) c.dipoles.push_back({mu, count});
  }

  const std::string scheme = r.text("run.scheme", "full");
  if (auto s = parse_scheme(scheme)) {
    c.scheme = *s;
  } else {
    r.problem("run.scheme must be 'full' or 'rwa', got '" + scheme + "'");
  }

  const std::string mode = r.text("run.mode", "steady");
  if (mode == "sweep") {
    spec.mode = RunMode::coupling_sweep;
  } else if (mode == "timescan") {
    spec.mode = RunMode::time_scan;
  } else if (mode == "steady") {
    spec.mode = RunMode::steady_point;
  } else {
    r.problem("run.mode must be sweep, timescan or steady, got '" + mode + "'");
  }

  spec.time_grid.start_fs = r.number("run.time_fs.start", spec.time_grid.start_fs);
  spec.time_grid.end_fs = r.number("run.time_fs.end", spec.time_grid.end_fs);
  spec.time_grid.step_fs = r.number("run.time_fs.step", spec.time_grid.step_fs);
  if (!(spec.time_grid.start_fs >= 0 && spec.time_grid.start_fs <= spec.time_grid.end_fs &&
        spec.time_grid.step_fs > 0)) {
    r.problem("run.time_fs needs 0 <= start <= end and step > 0");
  }

  auto& sw = spec.sweep;
  sw.gI_min_rad_s = r.number("run.sweep.gI_min_Hz", sw.gI_min_rad_s);
  sw.gI_max_rad_s = r.number("run.sweep.gI_max_Hz", sw.gI_max_rad_s);
  sw.gI_samples = r.integer("run.sweep.gI_samples", sw.gI_samples);
  sw.gII_list_rad_s = r.numbers("run.sweep.gII_list_Hz", sw.gII_list_rad_s);
  if (!(sw.gI_min_rad_s >= 0 && sw.gI_max_rad_s >= sw.gI_min_rad_s && sw.gI_samples >= 1)) {
    r.problem("run.sweep needs 0 <= gI_min_Hz <= gI_max_Hz and gI_samples >= 1");
  }
  for (double g : sw.gII_list_rad_s) {
    if (!(g >= 0)) {
      r.problem("run.sweep.gII_list_Hz entries must be non-negative");
      break;
    }
  }
  if (spec.mode == RunMode::coupling_sweep && c.emitters.size() < 2) {
    r.problem("a coupling sweep needs at least two emitter lines");
  }

  for (auto& p : validate_config(c)) r.problem(std::move(p));

  if (r.problems().empty()) {
    const auto labels = mode_labels_for(c);
    const std::vector<std::string> names =
        r.has("run.partitions") ? split(r.text("run.partitions", ""), ';') : kDefaultPartitions;
    if (names.empty()) r.problem("run.partitions lists no partitions");
    for (const auto& name : names) {
      try {
        spec.partitions.push_back(parse_partition(name, labels));
      } catch (const RangeError& e) {
        r.problem(e.what());
      }
    }
  }

  if (!r.problems().empty()) fail(r.problems());
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace cavent
