#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace peakflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The deformation x = s + xi is not strictly increasing, or a Jacobian
/// sample is not positive. `index` is the first offending node.
class NonMonotoneDeformation : public Error {
 public:
  explicit NonMonotoneDeformation(std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

/// A query fell outside the deformed (or reconstructed) range.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Picard iterates failed to contract.
class NoContraction : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct ConfigIssue {
  std::string field;   // dotted path, e.g. "grid.N"
  std::string reason;
};

/// Carries every problem found while validating a configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  ConfigError(std::string field, std::string reason)
      : ConfigError(std::vector<ConfigIssue>{{std::move(field), std::move(reason)}}) {}
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace peakflow
