#pragma once

#include <stdexcept>
#include <string>

namespace ptsusy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies within the exclusion radius of a divergence of a
/// closed form. The caller has to move the point or regrid.
class SingularPoint : public Error {
 public:
  SingularPoint(double x, const std::string& what)
      : Error(what), position_(x) {}
  double position() const noexcept { return position_; }

 private:
  double position_;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

/// Point is outside the fundamental cell on which a wave function's phase
/// logarithm is real.
class DomainViolation : public Error {
 public:
  DomainViolation(double x, const std::string& what)
      : Error(what), position_(x) {}
  double position() const noexcept { return position_; }

 private:
  double position_;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class InsufficientEigenvalues : public Error {
 public:
  using Error::Error;
};

class EvanescentOverflow : public Error {
 public:
  using Error::Error;
};

class DegenerateMatch : public Error {
 public:
  using Error::Error;
};

class SliceTooCoarse : public Error {
 public:
  using Error::Error;
};

}  // namespace ptsusy
