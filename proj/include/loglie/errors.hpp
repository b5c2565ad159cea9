#ifndef LOGLIE_ERRORS_HPP
#define LOGLIE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loglie {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonFinite : public Error {
 public:
  explicit NonFinite(const std::string& msg = "matrix contains NaN or Inf") : Error(msg) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& msg = "eigenvalue outside exp-representable range") : Error(msg) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& msg = "matrix is not positive-definite") : Error(msg) {}
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(const std::string& msg = "matrix is not symmetric within tolerance") : Error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

class ChartMismatch : public Error {
 public:
  explicit ChartMismatch(const std::string& msg = "operands live on different charts") : Error(msg) {}
};

class MembershipViolation : public Error {
 public:
  explicit MembershipViolation(const std::string& msg = "value violates manifold membership") : Error(msg) {}
};

class EmptySample : public Error {
 public:
  explicit EmptySample(const std::string& msg = "empty sample") : Error(msg) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& msg = "sample lengths differ") : Error(msg) {}
};

class SingularDiag : public Error {
 public:
  explicit SingularDiag(const std::string& msg = "singular diagonal in correlation normalization") : Error(msg) {}
};

class SingularH0 : public Error {
 public:
  explicit SingularH0(double condition)
      : Error("H0 system is numerically singular (condition " + std::to_string(condition) + ")"),
        condition(condition) {}
  double condition;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations, double residual)
      : Error(what + " did not converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace loglie

#endif
