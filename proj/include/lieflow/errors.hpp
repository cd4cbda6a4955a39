#pragma once

#include <stdexcept>
#include <string>

namespace lieflow {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix failed the relative pivot test (degenerate frame).
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of a closed-form formula (radicand, denominator).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON, parameter lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lieflow
