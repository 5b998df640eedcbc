#ifndef BCB_ERRORS_HPP
#define BCB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bcb {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Frame axes are numerically dependent; orthonormalization is impossible.
class DegenerateFrame : public Error {
public:
  using Error::Error;
};

/// Requested side lengths cannot form a triangle.
class TriangleInequalityViolated : public Error {
public:
  using Error::Error;
};

/// An inter-agent or agent-beacon separation is (numerically) zero, so the
/// pursuit laws are undefined.
class SingularConfiguration : public Error {
public:
  using Error::Error;
};

/// Control parameters violate the symmetry assumptions required by the
/// reduced shape dynamics (common gains, common offsets).
class AssumptionViolation : public Error {
public:
  using Error::Error;
};

/// A calculator was called with parameters outside its domain
/// (e.g. a beacon offset of zero where a nonzero one is required).
class ParameterViolation : public Error {
public:
  using Error::Error;
};

/// Shape values do not correspond to any configuration of two unit-heading
/// agents and a beacon.
class UnrealizableShape : public Error {
public:
  using Error::Error;
};

/// The two heading-constraint circles on the unit sphere do not intersect.
class NoIntersection : public Error {
public:
  using Error::Error;
};

/// Agents and beacon are collinear where a genuine triangle is required.
class CollinearConfiguration : public Error {
public:
  using Error::Error;
};

/// Shape values are off the circling nullcline beyond tolerance.
class NullclineViolation : public Error {
public:
  using Error::Error;
};

/// Too few samples (or too short a horizon) for the requested analysis.
class InsufficientData : public Error {
public:
  using Error::Error;
};

/// Input points are degenerate for the requested fit (collinear, < 4, ...).
class DegenerateData : public Error {
public:
  using Error::Error;
};

/// Config text could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// A parsed value violates a documented invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Filesystem / stream failure.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace bcb

#endif  // BCB_ERRORS_HPP
