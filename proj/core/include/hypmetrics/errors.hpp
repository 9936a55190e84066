#pragma once

#include <stdexcept>
#include <string>

namespace hypmetrics {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the domain, on its boundary, or the domain itself is
// malformed.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Points of different dimension were combined, or n < 2.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Unbounded boundary piece sampled without a window.
class MissingWindow : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedMetric : public Error {
 public:
  using Error::Error;
};

// Convexity requested for a trace that escaped to infinity along some ray.
class UnboundedBall : public Error {
 public:
  using Error::Error;
};

}  // namespace hypmetrics
