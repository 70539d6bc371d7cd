#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "avgmdp/mdp.hpp"

namespace avgmdp {

/// Rule k -> lambda_k for k >= 1. The k-th update (the one producing V^k)
/// uses lambda_k, so Anchor starts at lambda_1 = 2/3.
class Schedule {
 public:
  enum class Kind { Zero, Constant, Anchor, Custom };

  static Schedule zero() { return Schedule(Kind::Zero, 0.0, {}); }
  /// Throws InvalidSchedule unless 0 <= value < 1.
  static Schedule constant(double value);
  static Schedule anchor() { return Schedule(Kind::Anchor, 0.0, {}); }
  /// values[0] is lambda_1; the last value repeats past the end.
  static Schedule custom(std::vector<double> values);

  Kind kind() const { return kind_; }
  /// lambda_k; throws OutOfRange for k = 0.
  double at(std::size_t k) const;
  /// True when lambda_{i+1} <= lambda_i for every 1 <= i < k.
  bool nonincreasing_through(std::size_t k) const;
  std::string describe() const;

 private:
  Schedule(Kind kind, double value, std::vector<double> values)
      : kind_(kind), value_(value), values_(std::move(values)) {}

  Kind kind_;
  double value_;
  std::vector<double> values_;
};

/// Normalization f with f(x + c 1) = f(x) + c, used by the relative schemes.
class NormalizationFn {
 public:
  enum class Kind { ComponentOfH, ComponentOfTh, Max, Min, SpanMidpoint };

  static NormalizationFn component_of_h(std::size_t i) { return {Kind::ComponentOfH, i}; }
  static NormalizationFn component_of_th(std::size_t i) { return {Kind::ComponentOfTh, i}; }
  static NormalizationFn max() { return {Kind::Max, 0}; }
  static NormalizationFn min() { return {Kind::Min, 0}; }
  static NormalizationFn span_midpoint() { return {Kind::SpanMidpoint, 0}; }

  Kind kind() const { return kind_; }
  std::size_t index() const { return index_; }

  /// th is T h; only ComponentOfTh reads it.
  double eval(const ValueVector& h, const ValueVector& th) const;
  /// Computes T h itself when needed.
  double eval(const Mdp& m, const ValueVector& h) const;
  /// Throws DimensionMismatch when the component index is out of range.
  void check(std::size_t n_states) const;
  std::string describe() const;

 private:
  NormalizationFn(Kind kind, std::size_t index) : kind_(kind), index_(index) {}

  Kind kind_;
  std::size_t index_;
};

}  // namespace avgmdp
