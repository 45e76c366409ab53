#pragma once

#include <stdexcept>
#include <string>

namespace rimap {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Requested value lies outside the range of a monotone function.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An improper integral (or a truncation ladder) failed to settle.
///
/// For random integral mappings this is how a law outside the mapping's
/// domain shows up numerically.
class NonConvergent : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DepthLimit : public std::length_error {
public:
  using std::length_error::length_error;
};

class UnsupportedVariant : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed configuration text or an incomplete command.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace rimap
