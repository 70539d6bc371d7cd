#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "avgmdp/iterative.hpp"
#include "avgmdp/schedule.hpp"

namespace avgmdp::harness {

/// A command-line spec that does not parse or is inconsistent (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// const:<x> | anchor | zero | file:<path> (whitespace or comma separated values).
Schedule parse_schedule(std::string_view spec);
/// h:<i> | th:<i> | max | min | mid, with 0-based indices.
NormalizationFn parse_normalization(std::string_view spec);
Algorithm parse_algorithm_or_throw(std::string_view name);

/// zero | const:<c> | file:<path> | random:<seed>.
struct V0Spec {
  enum class Kind { Zero, Constant, File, Random } kind = Kind::Zero;
  double value = 0.0;
  std::string path;
  std::uint64_t seed = 0;
};

V0Spec parse_v0(std::string_view spec);
/// Materializes the vector for an n-state problem; throws ConfigError on a length mismatch.
ValueVector resolve_v0(const V0Spec& spec, std::size_t n);

/// Strict number parsing; throws ConfigError naming the field.
double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_unsigned(std::string_view text, std::string_view what);

}  // namespace avgmdp::harness
