#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pmc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, missing or inconsistent input. Carries one diagnostic per
/// offending entry when several problems are found in one pass.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message)
      : Error(message), diagnostics_{message} {}
  InputError(const std::string& summary, std::vector<std::string> diagnostics)
      : Error(summary), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// A computation precondition was violated (out-of-range value, incomplete scorecard).
class ComputeError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written.
class OutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmc
