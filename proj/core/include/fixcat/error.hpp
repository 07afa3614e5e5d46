#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fixcat {

// Outcome of a law/axiom check. A failing report names the first violated law
// by a stable code (e.g. "UnitLawViolation") and lists the witnessing ids.
struct ValidationReport {
  bool ok = true;
  std::string code;
  std::string message;
  std::vector<std::string> witness;

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string code, std::string message,
                               std::vector<std::string> witness = {}) {
    return {false, std::move(code), std::move(message), std::move(witness)};
  }

  explicit operator bool() const { return ok; }
};

// Hard failure of an operation whose precondition or input is unusable.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Raised when constructing a value whose validation report failed.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(report.code, report.message), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace fixcat
