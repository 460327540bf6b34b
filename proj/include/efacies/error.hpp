#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace efacies {

/// Broad failure classes; the CLI maps each to its exit code.
enum class ErrorKind { input, config, numeric };

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class InputError : public Error {
  public:
    explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class NumericError : public Error {
  public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

/// Raised when a named curve is required but not present.
class MissingCurveError : public InputError {
  public:
    explicit MissingCurveError(const std::string& mnemonic)
        : InputError("curve '" + mnemonic + "' not found"), mnemonic_(mnemonic) {}
    const std::string& mnemonic() const noexcept { return mnemonic_; }

  private:
    std::string mnemonic_;
};

}  // namespace efacies
