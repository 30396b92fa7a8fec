#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfcycles {

/// Base class for all typed failures raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A convergent P_n/Q_n with Q_n = 0 (the value is the point at infinity).
struct DivergentConvergent : Error {
  std::size_t index;
  explicit DivergentConvergent(std::size_t n)
      : Error("convergent " + std::to_string(n) + " has zero denominator"), index(n) {}
};

/// An intermediate denominator of a bottom-up evaluation vanished.
struct DivisionByZero : Error {
  using Error::Error;
};

/// More coefficients requested than a finite embedded table provides.
struct TableExhausted : Error {
  using Error::Error;
};

/// A horocycle family collapsed to a line or a point.
struct DegenerateHorocycle : Error {
  using Error::Error;
};

/// A cycle with negative discriminant has no real center/radius.
struct ImaginaryCycle : Error {
  using Error::Error;
};

/// A Moebius map was evaluated at (or too close to) its pole.
struct PoleHit : Error {
  using Error::Error;
};

/// A 2x2 Clifford matrix violates the versor (Ahlfors) shape conditions.
struct InvalidVersorMatrix : Error {
  using Error::Error;
};

/// A section plane could not be constructed from coincident touch points.
struct DegenerateView : Error {
  using Error::Error;
};

/// Malformed textual input.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace cfcycles
