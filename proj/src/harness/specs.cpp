#include "avgmdp/harness/specs.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "avgmdp/harness/mdp_io.hpp"
#include "avgmdp/harness/random_mdp.hpp"

namespace avgmdp::harness {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::vector<double> read_numbers(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  for (char& c : text)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(text);
  std::vector<double> values;
  std::string token;
  while (in >> token) values.push_back(parse_double(token, path));
  return values;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ConfigError("cannot parse '" + s + "' as a number for " + std::string(what));
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
    throw ConfigError("cannot parse '" + s + "' as a nonnegative integer for " + std::string(what));
  return v;
}

Schedule parse_schedule(std::string_view spec) {
  try {
    if (spec == "anchor") return Schedule::anchor();
    if (spec == "zero") return Schedule::zero();
    if (starts_with(spec, "const:")) return Schedule::constant(parse_double(spec.substr(6), "--lambda"));
    if (starts_with(spec, "file:")) {
      auto values = read_numbers(std::string(spec.substr(5)));
      return Schedule::custom(std::move(values));
    }
  } catch (const InvalidSchedule& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown schedule '" + std::string(spec) + "' (const:<x>|anchor|zero|file:<path>)");
}

NormalizationFn parse_normalization(std::string_view spec) {
  if (spec == "max") return NormalizationFn::max();
  if (spec == "min") return NormalizationFn::min();
  if (spec == "mid") return NormalizationFn::span_midpoint();
  if (starts_with(spec, "h:"))
    return NormalizationFn::component_of_h(parse_unsigned(spec.substr(2), "--f"));
  if (starts_with(spec, "th:"))
    return NormalizationFn::component_of_th(parse_unsigned(spec.substr(3), "--f"));
  throw ConfigError("unknown normalization '" + std::string(spec) + "' (h:<i>|th:<i>|max|min|mid)");
}

Algorithm parse_algorithm_or_throw(std::string_view name) {
  if (auto a = parse_algorithm(name)) return *a;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (vi|rx-vi|anc-vi|rx-rvi|anc-rvi)");
}

V0Spec parse_v0(std::string_view spec) {
  V0Spec out;
  if (spec == "zero") return out;
  if (starts_with(spec, "const:")) {
    out.kind = V0Spec::Kind::Constant;
    out.value = parse_double(spec.substr(6), "--v0");
  } else if (starts_with(spec, "file:")) {
    out.kind = V0Spec::Kind::File;
    out.path = std::string(spec.substr(5));
  } else if (starts_with(spec, "random:")) {
    out.kind = V0Spec::Kind::Random;
    out.seed = parse_unsigned(spec.substr(7), "--v0");
  } else {
    throw ConfigError("unknown v0 '" + std::string(spec) + "' (zero|const:<c>|file:<path>|random:<seed>)");
  }
  return out;
}

ValueVector resolve_v0(const V0Spec& spec, std::size_t n) {
  switch (spec.kind) {
    case V0Spec::Kind::Zero:
      return ValueVector::Zero(n);
    case V0Spec::Kind::Constant:
      return ValueVector::Constant(n, spec.value);
    case V0Spec::Kind::Random:
      return random_vector(n, spec.seed);
    case V0Spec::Kind::File: {
      const auto values = read_numbers(spec.path);
      if (values.size() != n)
        throw ConfigError("v0 file has " + std::to_string(values.size()) + " values, MDP has " +
                          std::to_string(n) + " states");
      return Eigen::Map<const ValueVector>(values.data(), static_cast<Eigen::Index>(n));
    }
  }
  return ValueVector::Zero(n);
}

}  // namespace avgmdp::harness
