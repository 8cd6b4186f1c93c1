#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hybridmem {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed trace line. line() is 1-based; 0 when parsed outside a file.
class TraceParseError : public Error {
  public:
    TraceParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class TraceIoError : public Error {
  public:
    TraceIoError(std::uint64_t accesses_read, const std::string& what)
        : Error(what + " (after " + std::to_string(accesses_read) + " accesses)"),
          accesses_read_(accesses_read) {}
    std::uint64_t accesses_read() const noexcept { return accesses_read_; }

  private:
    std::uint64_t accesses_read_;
};

class ConfigError : public Error {
  public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

class QueueError : public Error {
  public:
    using Error::Error;
};

// Raised when a policy emits an event batch that breaks the accounting rules.
class AccountingError : public Error {
  public:
    using Error::Error;
};

// AMAT/APPR/static power over zero requests or zero elapsed time.
class UndefinedMetricError : public Error {
  public:
    using Error::Error;
};

class PlanError : public Error {
  public:
    using Error::Error;
};

}  // namespace hybridmem
