#pragma once

#include <stdexcept>
#include <string>

namespace mcensus {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates an operation's precondition (bad dimension, bad value, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class DimensionError : public DomainError {
public:
  using DomainError::DomainError;
};

// Exact arithmetic left the representable range. Never wraps, never saturates.
class OverflowError : public Error {
public:
  using Error::Error;
};

// An entry does not fit the declared key width.
class KeyWidthError : public Error {
public:
  using Error::Error;
};

// A resource guard tripped (box too large, tuple count over the limit, ...).
class GuardError : public Error {
public:
  using Error::Error;
};

// A self-check that should be unreachable failed.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace mcensus
