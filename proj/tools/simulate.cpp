// simulate: coupling sweeps, time scans and steady-state reports for the
// driven cavity / collective emitter model.
//
//   simulate <sweep|timescan|steady|validate> --config <path> [--out <path>]
//            [--format csv|json] [--workers N] [--scheme full|rwa]
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 no steady state (steady only).

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cavent/config.hpp"
#include "cavent/errors.hpp"
#include "cavent/experiment.hpp"
#include "cavent/output.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNoSteadyState = 3;

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string scheme;
  int workers = 1;
};

template <typename Result>
void emit(const Result& result, const Options& opts) {
  std::ostringstream buffer;
  if (opts.format == "json") {
    cavent::write_json(buffer, result);
  } else {
    cavent::write_csv(buffer, result);
  }
  if (opts.out.empty()) {
    std::cout << buffer.str();
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) throw cavent::ValidationError("cannot write to '" + opts.out + "'");
  file << buffer.str();
}

int run(const std::string& command, const Options& opts) {
  cavent::ExperimentSpec spec = cavent::load_config(opts.config);
  if (!opts.scheme.empty()) spec.config.scheme = *cavent::parse_scheme(opts.scheme);
  spec.output_path = opts.out;
  spec.format = opts.format == "json" ? cavent::OutputFormat::json : cavent::OutputFormat::csv;

  if (command == "validate") {
    std::cout << "configuration is valid (" << spec.config.num_cavity_modes << " cavity modes, "
              << spec.config.emitters.size() << " emitter lines, "
              << spec.partitions.size() << " partitions)\n";
    return 0;
  }
  if (command == "sweep") {
    spec.mode = cavent::RunMode::coupling_sweep;
    if (spec.config.emitters.size() < 2) {
      throw cavent::ValidationError("a coupling sweep needs at least two emitter lines");
    }
    emit(cavent::run_coupling_sweep(spec, opts.workers), opts);
    return 0;
  }
  if (command == "timescan") {
    spec.mode = cavent::RunMode::time_scan;
    const auto series = cavent::run_time_scan(spec);
    emit(series, opts);
    if (series.error) {
      std::cerr << "error: " << *series.error << '\n';
      return kExitNumerical;
    }
    return 0;
  }
  spec.mode = cavent::RunMode::steady_point;
  try {
    emit(cavent::run_steady_point(spec), opts);
  } catch (const cavent::NoSteadyStateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoSteadyState;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of a driven multimode cavity coupled to collective emitters"};
  app.require_subcommand(1);

  Options opts;
  for (const auto& [name, help] : std::map<std::string, std::string>{
           {"sweep", "steady-state entanglement over a grid of base couplings"},
           {"timescan", "entanglement and excitation numbers from vacuum over time"},
           {"steady", "steady-state report for the configured point"},
           {"validate", "check a configuration file"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "configuration file")->required()->check(
        CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output file (default: stdout)");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", opts.workers, "sweep worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--scheme", opts.scheme, "override the coupling scheme")
        ->check(CLI::IsMember({"full", "rwa"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opts);
  } catch (const cavent::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const cavent::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
