#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l2 {

/// Base class for all toolkit errors. `module` names the subsystem that
/// raised the error so CLI output can carry provenance.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class ArgumentError : public Error {
 public:
  ArgumentError(std::string module, const std::string& message)
      : Error(std::move(module), message) {}
};

class IoError : public Error {
 public:
  IoError(std::string module, const std::string& message)
      : Error(std::move(module), message) {}
};

/// Malformed record in a dataset or config file. Lines are 1-based; `field`
/// is empty when the whole line failed to parse.
class SchemaError : public Error {
 public:
  SchemaError(std::string module, std::size_t line, std::string field,
              const std::string& message)
      : Error(std::move(module),
              "line " + std::to_string(line) +
                  (field.empty() ? "" : ": field '" + field + "'") + ": " + message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Remote call failed after exhausting retries; keeps the per-attempt log.
class TransportError : public Error {
 public:
  TransportError(std::string module, const std::string& message,
                 std::vector<std::string> attempts)
      : Error(std::move(module), message), attempts_(std::move(attempts)) {}

  const std::vector<std::string>& attempts() const noexcept { return attempts_; }

 private:
  std::vector<std::string> attempts_;
};

}  // namespace l2
