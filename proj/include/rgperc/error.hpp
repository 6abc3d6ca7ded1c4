#pragma once

#include <stdexcept>
#include <string>

namespace rgperc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A generating-function moment that does not converge (for example L''(1)
// of a power law with exponent <= 3). Never represented as infinity.
class DivergentMoment : public Error {
 public:
  using Error::Error;
};

// L''(1) <= L'(1): no subcritical-to-supercritical transition in (0, 1).
class NoTransition : public Error {
 public:
  using Error::Error;
};

// Rejection sampling for a simple graph ran out of attempts.
class GenerationFailed : public Error {
 public:
  GenerationFailed(const std::string& what, double predicted_simple_probability,
                   std::size_t attempts)
      : Error(what),
        predicted_simple_probability_(predicted_simple_probability),
        attempts_(attempts) {}

  double predicted_simple_probability() const { return predicted_simple_probability_; }
  std::size_t attempts() const { return attempts_; }

 private:
  double predicted_simple_probability_;
  std::size_t attempts_;
};

// Exact enumeration requested on an instance beyond the oracle's size limits.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// Conditioning event with probability zero.
class Unreachable : public Error {
 public:
  using Error::Error;
};

}  // namespace rgperc
