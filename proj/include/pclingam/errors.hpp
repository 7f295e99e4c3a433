#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pclingam {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (CSV, JSON).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Orientation propagation produced a directed cycle or a new unshielded collider.
class InconsistentOrientation : public Error {
 public:
  using Error::Error;
};

/// Data too collinear or constant for the requested computation.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NotEquivalent : public Error {
 public:
  using Error::Error;
};

/// Equivalence class larger than the configured cap. `observed` is the number
/// of members seen when enumeration stopped, so the true size is at least that.
class ClassTooLarge : public Error {
 public:
  ClassTooLarge(std::size_t cap, std::size_t observed)
      : Error("equivalence class has at least " + std::to_string(observed) +
              " members, exceeding the cap of " + std::to_string(cap)),
        cap_(cap),
        observed_(observed) {}

  std::size_t cap() const { return cap_; }
  std::size_t observed() const { return observed_; }

 private:
  std::size_t cap_;
  std::size_t observed_;
};

}  // namespace pclingam
