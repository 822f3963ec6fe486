#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace frobsieve {

// Every failure carries a short stable name (used in logs and tests) and a
// category that the CLI maps to its exit code: Validation -> 2, Resource -> 3,
// Internal -> 4.
enum class ErrorCategory { Validation, Resource, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail),
        category_(category),
        name_(std::move(name)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& name() const noexcept { return name_; }

private:
  ErrorCategory category_;
  std::string name_;
};

[[noreturn]] inline void fail_validation(std::string name, const std::string& detail) {
  throw Error(ErrorCategory::Validation, std::move(name), detail);
}

[[noreturn]] inline void fail_resource(std::string name, const std::string& detail) {
  throw Error(ErrorCategory::Resource, std::move(name), detail);
}

[[noreturn]] inline void fail_internal(std::string name, const std::string& detail) {
  throw Error(ErrorCategory::Internal, std::move(name), detail);
}

}  // namespace frobsieve
