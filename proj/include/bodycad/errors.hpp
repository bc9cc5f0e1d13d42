#pragma once

#include <stdexcept>
#include <string>

namespace bodycad
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A direction vector that must be nonzero was zero.
class DegenerateDirection : public Error
{
public:
  using Error::Error;
};

/// Geometry that a constraint's row construction requires is degenerate (e.g. parallel
/// directions where a non-parallel pair is needed).
class DegenerateConstraint : public Error
{
public:
  using Error::Error;
};

/// A distance kind was given a = 0; the matching coincidence kind must be used instead.
class ZeroDistance : public Error
{
public:
  using Error::Error;
};

class InvalidRadius : public Error
{
public:
  using Error::Error;
};

/// Sparsity counts outside 0 <= l < 2k, or a nested pair whose inner counts are not
/// more restrictive than the outer ones.
class UnsupportedCounts : public Error
{
public:
  using Error::Error;
};

class OracleTooLarge : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  using Error::Error;
};

/// Raised by assembly; wraps the compiler error with the offending constraint index.
class AssemblyError : public Error
{
public:
  AssemblyError(std::size_t constraint, const std::string& what)
    : Error("constraint " + std::to_string(constraint) + ": " + what), constraint_(constraint)
  {
  }

  std::size_t constraint() const noexcept { return constraint_; }

private:
  std::size_t constraint_;
};

}  // namespace bodycad
