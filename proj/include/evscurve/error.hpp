#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evscurve {

// Machine-readable failure classes. The string form (see code_name) is what
// reports carry in their "reason" fields.
enum class ErrorCode {
  validation,
  duplicate,
  domain,
  undefined_share,
  insufficient_data,
  degenerate_abscissa,
  no_crossing,
  no_data,
  range,
  mixed_thresholds,
  precondition,
  io,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::string_view reason() const noexcept { return code_name(code_); }

 private:
  ErrorCode code_;
};

/// Input failed validation. line() is 1-based, 0 when not tied to a file line.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::size_t line = 0, std::string field = {},
                  ErrorCode code = ErrorCode::validation)
      : Error(code, message), line_(line), field_(std::move(field)) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(ErrorCode::domain, message) {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(std::size_t n_usable);

  [[nodiscard]] std::size_t n_usable() const noexcept { return n_usable_; }

 private:
  std::size_t n_usable_;
};

}  // namespace evscurve
