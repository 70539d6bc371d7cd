#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avgmdp/harness/experiment.hpp"

namespace avgmdp::harness {

inline constexpr const char* kTraceHeader =
    "k,lambda,f_value,bellman_sup_err,bellman_span,normalized_err,policy_err,upper_bound,lower_bound";

/// %.17g, or an empty string for a missing value.
std::string format_cell(const std::optional<double>& v);

/// One line per trace row, LF endings, empty cells for unavailable metrics.
std::string trace_csv(const Experiment& e);

/// k followed by the stored iterate, one line per row that kept its iterate.
std::string iterates_csv(const IterationTrace& trace);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  /// Column index by name; throws FormatError when absent.
  std::size_t column(const std::string& name) const;
};

/// Numeric CSV with a header line; empty cells become nullopt.
CsvTable parse_csv(const std::string& text);

}  // namespace avgmdp::harness
