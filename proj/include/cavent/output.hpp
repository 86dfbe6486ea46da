#pragma once

#include <iosfwd>
#include <string>

#include "cavent/experiment.hpp"

namespace cavent {

/// Scientific notation with nine significant digits.
std::string format_number(double value);

// CSV: LF line endings, header always present. Sweep columns are
// gI_Hz,gII_Hz,stable,E_<partition>...,min_2nu; unstable rows leave the
// entanglement and min_2nu fields empty.
void write_csv(std::ostream& out, const SweepResult& result);
void write_csv(std::ostream& out, const TimeSeries& series);
void write_csv(std::ostream& out, const SteadyReport& report);

void write_json(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const TimeSeries& series);
void write_json(std::ostream& out, const SteadyReport& report);

}  // namespace cavent
