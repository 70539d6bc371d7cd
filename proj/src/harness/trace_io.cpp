#include "avgmdp/harness/trace_io.hpp"

#include <cstdio>
#include <sstream>

#include "avgmdp/harness/mdp_io.hpp"
#include "avgmdp/harness/specs.hpp"

namespace avgmdp::harness {

std::string format_cell(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::string trace_csv(const Experiment& e) {
  std::string out = kTraceHeader;
  out += '\n';
  for (std::size_t i = 0; i < e.trace.rows.size(); ++i) {
    const TraceRow& r = e.trace.rows[i];
    out += std::to_string(r.k);
    for (const auto& cell : {r.lambda, r.f_value, r.bellman_sup_err,
                             std::optional<double>(r.residual_span), r.normalized_err,
                             r.policy_err, e.upper[i], e.lower[i]}) {
      out += ',';
      out += format_cell(cell);
    }
    out += '\n';
  }
  return out;
}

std::string iterates_csv(const IterationTrace& trace) {
  std::string out = "k";
  for (Eigen::Index s = 0; s < trace.v0.size(); ++s) out += ",v" + std::to_string(s);
  out += '\n';
  for (const auto& r : trace.rows) {
    if (r.iterate.size() == 0) continue;
    out += std::to_string(r.k);
    for (double x : r.iterate) out += "," + format_cell(x);
    out += '\n';
  }
  return out;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw FormatError("CSV has no column '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  if (!std::getline(in, line)) throw FormatError("empty CSV");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size())
      throw FormatError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(table.header.size()));
    std::vector<std::optional<double>> row;
    for (const auto& c : cells) {
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      try {
        row.emplace_back(parse_double(c, "CSV cell"));
      } catch (const ConfigError& e) {
        throw FormatError(e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace avgmdp::harness
