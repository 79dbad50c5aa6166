#pragma once

#include <stdexcept>
#include <string>

namespace ssd {

// Caller broke a documented precondition (bad action index, illegal move
// intent, invalid probability arguments, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad configuration: unknown environment, unknown parameter key, malformed map.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key = {})
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Config text could not be parsed. line is 1-based, 0 when unknown.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& message, int line, std::string key = {})
      : ConfigError("line " + std::to_string(line) + ": " + message, std::move(key)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace ssd
