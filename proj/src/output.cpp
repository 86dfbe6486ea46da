#include "cavent/output.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace cavent {

namespace {

using Json = nlohmann::ordered_json;

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<std::string> partition_columns(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(partition_column(n));
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  std::vector<std::string> header = {"gI_Hz", "gII_Hz", "stable"};
  for (auto& c : partition_columns(result.partition_names)) header.push_back(std::move(c));
  header.emplace_back("min_2nu");
  write_row(out, header);
  for (const auto& row : result.rows) {
    std::vector<std::string> f = {format_number(row.gI_rad_s), format_number(row.gII_rad_s),
                                  row.stable ? "1" : "0"};
    for (std::size_t p = 0; p < result.partition_names.size(); ++p) {
      f.push_back(row.stable ? format_number(row.entanglement[p]) : "");
    }
    f.push_back(row.stable ? format_number(row.min_2nu) : "");
    write_row(out, f);
  }
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  std::vector<std::string> header = {"t_fs"};
  for (auto& c : partition_columns(series.partition_names)) header.push_back(std::move(c));
  for (const auto& l : series.mode_labels) header.push_back("N" + l);
  write_row(out, header);
  for (const auto& row : series.rows) {
    std::vector<std::string> f = {format_number(row.t_fs)};
    for (double e : row.entanglement) f.push_back(format_number(e));
    for (double n : row.excitation) f.push_back(format_number(n));
    write_row(out, f);
  }
}

void write_csv(std::ostream& out, const SteadyReport& report) {
  std::vector<std::string> header = {"gI_Hz", "gII_Hz"};
  for (auto& c : partition_columns(report.partition_names)) header.push_back(std::move(c));
  header.insert(header.end(), {"min_2nu", "t_steady_fs", "steady_reached"});
  for (const auto& l : report.mode_labels) header.push_back("Nmax_" + l);
  write_row(out, header);

  std::vector<std::string> f = {format_number(report.gI_rad_s), format_number(report.gII_rad_s)};
  for (double e : report.entanglement) f.push_back(format_number(e));
  f.push_back(format_number(report.min_2nu));
  f.push_back(format_number(report.time_to_steady.time_fs));
  f.emplace_back(report.time_to_steady.reached ? "1" : "0");
  for (double n : report.max_excitation) f.push_back(format_number(n));
  write_row(out, f);
}

void write_json(std::ostream& out, const SweepResult& result) {
  Json rows = Json::array();
  const auto columns = partition_columns(result.partition_names);
  for (const auto& row : result.rows) {
    Json r;
    r["gI_Hz"] = row.gI_rad_s;
    r["gII_Hz"] = row.gII_rad_s;
    r["stable"] = row.stable;
    for (std::size_t p = 0; p < columns.size(); ++p) {
      r[columns[p]] = row.stable ? Json(row.entanglement[p]) : Json(nullptr);
    }
    r["min_2nu"] = row.stable ? Json(row.min_2nu) : Json(nullptr);
    rows.push_back(std::move(r));
  }
  Json doc;
  doc["kind"] = "sweep";
  doc["partitions"] = result.partition_names;
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_json(std::ostream& out, const TimeSeries& series) {
  Json rows = Json::array();
  const auto columns = partition_columns(series.partition_names);
  for (const auto& row : series.rows) {
    Json r;
    r["t_fs"] = row.t_fs;
    for (std::size_t p = 0; p < columns.size(); ++p) r[columns[p]] = row.entanglement[p];
    for (std::size_t k = 0; k < series.mode_labels.size(); ++k) {
      r["N" + series.mode_labels[k]] = row.excitation[k];
    }
    rows.push_back(std::move(r));
  }
  Json doc;
  doc["kind"] = "timescan";
  doc["partitions"] = series.partition_names;
  doc["rows"] = std::move(rows);
  if (series.error) doc["error"] = *series.error;
  out << doc.dump(2) << '\n';
}

void write_json(std::ostream& out, const SteadyReport& report) {
  Json doc;
  doc["kind"] = "steady";
  doc["gI_Hz"] = report.gI_rad_s;
  doc["gII_Hz"] = report.gII_rad_s;
  const auto columns = partition_columns(report.partition_names);
  for (std::size_t p = 0; p < columns.size(); ++p) doc[columns[p]] = report.entanglement[p];
  doc["min_2nu"] = report.min_2nu;
  doc["t_steady_fs"] = report.time_to_steady.time_fs;
  doc["steady_reached"] = report.time_to_steady.reached;
  for (std::size_t k = 0; k < report.mode_labels.size(); ++k) {
    doc["Nmax_" + report.mode_labels[k]] = report.max_excitation[k];
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cavent
