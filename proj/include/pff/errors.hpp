#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pff {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonPositiveJacobian : public Error {
public:
  explicit NonPositiveJacobian(double det)
      : Error("non-positive Jacobian: det F = " + std::to_string(det)), det_(det) {}
  double det() const noexcept { return det_; }

private:
  double det_;
};

class OutOfRangeZ : public Error {
public:
  explicit OutOfRangeZ(double z) : Error("phase-field value outside [0,1]: " + std::to_string(z)) {}
};

class NonPositiveParameter : public Error {
public:
  using Error::Error;
};

class InvalidInvariant : public Error {
public:
  using Error::Error;
};

class InvalidSlit : public Error {
public:
  using Error::Error;
};

class EigenSolveFailure : public Error {
public:
  using Error::Error;
};

class SingularTangent : public Error {
public:
  using Error::Error;
};

class NewtonDiverged : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, std::string key)
      : Error(format(what, line, key)), line_(line), key_(std::move(key)) {}
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

private:
  static std::string format(const std::string& what, int line, const std::string& key) {
    std::string msg = "parse error";
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!key.empty()) msg += " (key '" + key + "')";
    return msg + ": " + what;
  }
  int line_;
  std::string key_;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string msg = "invalid configuration:";
    for (const auto& s : v) msg += "\n  - " + s;
    return msg;
  }
  std::vector<std::string> violations_;
};

class IoError : public Error {
public:
  using Error::Error;
};

class NoCrackFound : public Error {
public:
  using Error::Error;
};

}  // namespace pff
