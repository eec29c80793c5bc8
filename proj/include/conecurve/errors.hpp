#pragma once

#include <stdexcept>
#include <string>

namespace conecurve {

// Base class for every error raised by the library. Mathematical outcomes
// (a violated hypothesis, a failed certificate) are never exceptions; they
// are reported through the result types.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFunctionCurve : public Error {
 public:
  NonFunctionCurve() : Error("curve is not the graph of a function (x must strictly increase)") {}
  explicit NonFunctionCurve(const std::string& what) : Error(what) {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotOnCurve : public Error {
 public:
  NotOnCurve() : Error("point does not lie on the curve") {}
  using Error::Error;
};

class ZeroClearance : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace conecurve
