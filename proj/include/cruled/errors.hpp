#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cruled {

enum class ErrorKind {
  Syntax,
  UnknownFunction,
  MissingComponent,
  EmptyDomain,
  OutOfDomain,
  EvaluationSingularity,
  NonRegularCurve,
  NotUnitSpeed,
  FrameUndefined,
  DegenerateBaseCurve,
  CylindricalRuling,
  DegenerateTangentPlane,
  SingularPoint,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library.
class GeomError : public std::runtime_error {
 public:
  GeomError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the 0-based character offset into the expression text.
class ParseError : public GeomError {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : GeomError(kind, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cruled
