#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "cavent/config.hpp"
#include "cavent/errors.hpp"

using namespace cavent;

namespace {

const std::string kMinimal = R"(
[cavity]
length_m = 518e-9
n_r = 1.33
R1 = 0.5
R2 = 1.0
modes = 4
[emitters]
omega_rad_s = 2.5e15, 4.1e15
fwhm_meV = 130, 600
gtilde_Hz = 3.9e13, 6e13
)";

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("the sweep preset parses") {
  const ExperimentSpec spec = load_config(std::string(CAVENT_PRESETS) + "/fig2.cfg");
  CHECK(spec.mode == RunMode::coupling_sweep);
  CHECK(spec.config.num_cavity_modes == 4);
  CHECK(spec.config.scheme == CouplingScheme::full);
  REQUIRE(spec.partitions.size() == 3);
  CHECK(spec.partitions[0].name == "12:34");
  CHECK(spec.partitions[1].name == "1234:I,II");
  CHECK(spec.partitions[2].name == "I:II");
  CHECK(spec.sweep.gI_values().size() == 41);
  CHECK(spec.sweep.gII_list_rad_s.size() == 5);
  CHECK(spec.sweep.gI_values().back() == doctest::Approx(0.2e15));
}

TEST_CASE("minimal document takes defaults") {
  const ExperimentSpec spec = parse_config(kMinimal);
  CHECK(spec.mode == RunMode::steady_point);
  CHECK(spec.config.scheme == CouplingScheme::full);
  CHECK(spec.partitions.size() == kDefaultPartitions.size());
  REQUIRE(spec.config.drive_power_W.size() == 4);
  for (double p : spec.config.drive_power_W) CHECK(p == 0.05);
  CHECK(spec.config.drive_frequency_rad_s.empty());
  CHECK(spec.config.base_coupling_rad_s.size() == 2);
}

TEST_CASE("the reference preset matches the built-in reference") {
  const ExperimentSpec spec = load_config(std::string(CAVENT_PRESETS) + "/reference.cfg");
  const PhysicalConfig ref = reference_config();
  CHECK(spec.config.cavity_length_m == ref.cavity_length_m);
  CHECK(spec.config.refractive_index == ref.refractive_index);
  CHECK(spec.config.base_coupling_rad_s == ref.base_coupling_rad_s);
  REQUIRE(spec.config.emitters.size() == ref.emitters.size());
  for (std::size_t i = 0; i < ref.emitters.size(); ++i) {
    CHECK(spec.config.emitters[i].fwhm_J == doctest::Approx(ref.emitters[i].fwhm_J));
  }
}

TEST_CASE("empty document lists the required keys") {
  const std::string msg = error_of("");
  CHECK(contains(msg, "missing required keys"));
  CHECK(contains(msg, "cavity.length_m"));
  CHECK(contains(msg, "emitters.fwhm_meV"));
}

TEST_CASE("negative cavity length is rejected") {
  std::string text = kMinimal;
  text.replace(text.find("518e-9"), 6, "-1");
  CHECK(contains(error_of(text), "cavity_length must be positive"));
}

TEST_CASE("several problems are reported together") {
  std::string text = kMinimal;
  text.replace(text.find("518e-9"), 6, "-1");
  text.replace(text.find("R1 = 0.5"), 8, "R1 = 1.5");
  const std::string msg = error_of(text);
  CHECK(contains(msg, "cavity_length"));
  CHECK(contains(msg, "mirror_R1"));
}

TEST_CASE("unknown and duplicate keys are named") {
  CHECK(contains(error_of(kMinimal + "[cavity]\nfinesse = 3\n"), "cavity.finesse"));
  CHECK(contains(error_of(kMinimal + "[cavity]\nmodes = 5\n"), "duplicate key 'cavity.modes'"));
}

TEST_CASE("malformed values") {
  CHECK_FALSE(error_of(kMinimal + "[run]\nscheme = sideways\n").empty());
  CHECK_FALSE(error_of(kMinimal + "[run]\nmode = forever\n").empty());
  CHECK_FALSE(error_of(kMinimal + "[drive]\npower_W = lots\n").empty());
  CHECK_FALSE(error_of(kMinimal + "[drive]\nresonant = false\n").empty());
}

TEST_CASE("explicit drive frequency and per-mode power") {
  const ExperimentSpec spec = parse_config(
      kMinimal + "[drive]\npower_W = 0.1, 0.2, 0.3, 0.4\nlambda_rad_s = 1e15, 2e15, 3e15, 4e15\n");
  CHECK(spec.config.drive_power_W == std::vector<double>{0.1, 0.2, 0.3, 0.4});
  CHECK(spec.config.drive_frequency_rad_s.size() == 4);
}

TEST_CASE("dipole route for the coupling") {
  std::string text = kMinimal;
  text.replace(text.find("gtilde_Hz = 3.9e13, 6e13"), 24, "dipole_Cm = 1e-29, 2e-29\ncount = 1e6");
  const ExperimentSpec spec = parse_config(text);
  CHECK(spec.config.base_coupling_rad_s.empty());
  CHECK(spec.config.dipoles.size() == 2);
}

TEST_CASE("partition parsing") {
  const std::vector<std::string> labels = {"1", "2", "3", "4", "I", "II"};
  const NamedPartition a = parse_partition("12:34", labels);
  CHECK(a.partition.side_a == std::vector<int>{0, 1});
  CHECK(a.partition.side_b == std::vector<int>{2, 3});

  const NamedPartition b = parse_partition("1234:I,II", labels);
  CHECK(b.partition.side_a == std::vector<int>{0, 1, 2, 3});
  CHECK(b.partition.side_b == std::vector<int>{4, 5});

  const NamedPartition c = parse_partition("I:II", labels);
  CHECK(c.partition.side_a == std::vector<int>{4});
  CHECK(c.partition.side_b == std::vector<int>{5});

  CHECK_THROWS_AS(parse_partition("12", labels), Error);
  CHECK_THROWS_AS(parse_partition("15:2", labels), RangeError);
  CHECK_THROWS_AS(parse_partition("III:I", labels), RangeError);
}

TEST_CASE("partition column names") {
  CHECK(partition_column("12:34") == "E_12_34");
  CHECK(partition_column("1234:I,II") == "E_1234_III");
  CHECK(partition_column("I:II") == "E_I_II");
}

TEST_CASE("mode labels") {
  CHECK(mode_labels_for(reference_config()) ==
        std::vector<std::string>{"1", "2", "3", "4", "I", "II"});
}
