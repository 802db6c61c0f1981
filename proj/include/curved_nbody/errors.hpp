#pragma once

#include <stdexcept>
#include <string>

namespace curved_nbody {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument shape or a value outside its documented range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point whose signed norm is zero or has the wrong sign for the space.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

enum class PairKind { None, Collision, Antipodal };

std::string to_string(PairKind kind);

/// Raised when a pair of bodies makes the force denominator vanish.
class SingularPair : public Error {
 public:
  SingularPair(int i, int j, PairKind kind, double base);

  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  PairKind kind() const noexcept { return kind_; }
  /// Value of sigma - sigma * (q_i . q_j)^2 that triggered the error.
  double base() const noexcept { return base_; }

 private:
  int i_;
  int j_;
  PairKind kind_;
  double base_;
};

/// Two bodies of a trapezoid construction would be antipodal.
class AntipodalConfiguration : public Error {
 public:
  using Error::Error;
};

/// A reduced or lifted coordinate left the admissible region of its family.
class DomainExit : public Error {
 public:
  DomainExit(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class StepUnderflow : public Error {
 public:
  using Error::Error;
};

class MaxStepsExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace curved_nbody
