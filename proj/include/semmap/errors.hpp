#pragma once

#include <stdexcept>
#include <string>

namespace semmap {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or missing configuration / input files. CLI exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input that is inconsistent at runtime
// (trajectory leaves the grid, unknown anchor node, non-PSD covariance).
// CLI exit code 3.
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// Recoverable per-detection fitting failure. The pipeline drops the
// detection and keeps going; only callers that fit directly see it.
class FitError : public Error {
 public:
  enum class Kind {
    insufficient_points,
    no_consensus,
    degenerate,
    empty_cloud,
    no_cluster,
  };

  FitError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace semmap
