#include "avgmdp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avgmdp {

namespace {

void check_lambda(double value) {
  if (!std::isfinite(value) || value < 0.0 || value >= 1.0) {
    std::ostringstream out;
    out.precision(17);
    out << "lambda must lie in [0, 1), got " << value;
    throw InvalidSchedule(out.str());
  }
}

}  // namespace

Schedule Schedule::constant(double value) {
  check_lambda(value);
  return Schedule(Kind::Constant, value, {});
}

Schedule Schedule::custom(std::vector<double> values) {
  if (values.empty()) throw InvalidSchedule("custom schedule needs at least one value");
  for (double v : values) check_lambda(v);
  return Schedule(Kind::Custom, 0.0, std::move(values));
}

double Schedule::at(std::size_t k) const {
  if (k == 0) throw OutOfRange("schedules start at k = 1");
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return value_;
    case Kind::Anchor:
      return 2.0 / (static_cast<double>(k) + 2.0);
    case Kind::Custom:
      return values_[std::min(k, values_.size()) - 1];
  }
  return 0.0;
}

bool Schedule::nonincreasing_through(std::size_t k) const {
  if (kind_ != Kind::Custom) return true;
  const std::size_t last = std::min(k, values_.size());
  for (std::size_t i = 1; i < last; ++i)
    if (values_[i] > values_[i - 1]) return false;
  return true;
}

std::string Schedule::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::Zero:
      return "zero";
    case Kind::Constant:
      out << "const:" << value_;
      return out.str();
    case Kind::Anchor:
      return "anchor";
    case Kind::Custom:
      out << "custom[" << values_.size() << "]";
      return out.str();
  }
  return "unknown";
}

double NormalizationFn::eval(const ValueVector& h, const ValueVector& th) const {
  switch (kind_) {
    case Kind::ComponentOfH:
      return h(static_cast<Eigen::Index>(index_));
    case Kind::ComponentOfTh:
      return th(static_cast<Eigen::Index>(index_));
    case Kind::Max:
      return h.maxCoeff();
    case Kind::Min:
      return h.minCoeff();
    case Kind::SpanMidpoint:
      return 0.5 * (h.maxCoeff() + h.minCoeff());
  }
  return 0.0;
}

double NormalizationFn::eval(const Mdp& m, const ValueVector& h) const {
  check(m.n_states());
  if (kind_ == Kind::ComponentOfTh) return eval(h, bellman_optimality(m, h).tv);
  return eval(h, h);
}

void NormalizationFn::check(std::size_t n_states) const {
  if ((kind_ == Kind::ComponentOfH || kind_ == Kind::ComponentOfTh) && index_ >= n_states)
    throw DimensionMismatch("normalization index " + std::to_string(index_) + " out of range for " +
                            std::to_string(n_states) + " states");
}

std::string NormalizationFn::describe() const {
  switch (kind_) {
    case Kind::ComponentOfH:
      return "h:" + std::to_string(index_);
    case Kind::ComponentOfTh:
      return "th:" + std::to_string(index_);
    case Kind::Max:
      return "max";
    case Kind::Min:
      return "min";
    case Kind::SpanMidpoint:
      return "mid";
  }
  return "unknown";
}

}  // namespace avgmdp
