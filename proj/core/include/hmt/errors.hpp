#ifndef HMT_ERRORS_HPP
#define HMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmt {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A queried point lies outside (or too close to the edge of) a chart's domain box.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A metric failed its positivity check (Cholesky breakdown).
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// An input violated a structural precondition (e.g. a non-skew torsion tensor).
/// Carries the size of the worst violation.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double max_violation)
      : Error(what), max_violation_(max_violation) {}
  double max_violation() const { return max_violation_; }

 private:
  double max_violation_ = 0.0;
};

/// Integration state became NaN/Inf. Carries the step index where it happened.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int step_index)
      : Error(what), step_index_(step_index) {}
  int step_index() const { return step_index_; }

 private:
  int step_index_ = -1;
};

/// Newton linear solve hit a numerically singular Jacobian.
class SingularJacobianError : public Error {
 public:
  SingularJacobianError(const std::string& what, double smallest_singular_value)
      : Error(what), sigma_min_(smallest_singular_value) {}
  double smallest_singular_value() const { return sigma_min_; }

 private:
  double sigma_min_ = 0.0;
};

/// Dense desk-scale cap exceeded (jacobi assembly).
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// Eigen-iteration failed to converge.
class EigenSolveError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unknown configuration key. Carries the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key_path)
      : Error(what), key_path_(std::move(key_path)) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

} // namespace hmt

#endif
