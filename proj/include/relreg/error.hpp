#pragma once

#include <stdexcept>
#include <string>

namespace relreg {

/// Caller violated an operation's precondition (dimension mismatch, bad argument).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A query point lies outside the domain of a cost map.
class DomainError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// The Informed Set has empty interior for the requested cost bound.
class DegenerateSetError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace relreg
