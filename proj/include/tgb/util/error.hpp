#pragma once

#include <stdexcept>
#include <string>

namespace tgb {

// Base for every tool-level failure. Subject failures are never reported
// through exceptions; they are data inside a RunResult.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tgb
