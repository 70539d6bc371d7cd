#pragma once

#include <stdexcept>
#include <string>

namespace avgmdp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when an Mdp is built from tables that fail validation.
class InvalidMdp : public Error {
 public:
  using Error::Error;
};

class NotStochastic : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The deterministic-policy enumeration guard tripped.
class TooManyPolicies : public Error {
 public:
  using Error::Error;
};

/// The exact solver found no candidate bias passing verification.
class NoVerifiedCandidate : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class SchedulePreconditionViolated : public Error {
 public:
  using Error::Error;
};

class BadSize : public Error {
 public:
  using Error::Error;
};

class InvalidSchedule : public Error {
 public:
  using Error::Error;
};

}  // namespace avgmdp
