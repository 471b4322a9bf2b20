#pragma once

#include <stdexcept>
#include <string>

namespace chenciner {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A parameter point lies outside the validity disk |alpha| < epsilon.
class OutOfValidityRadius : public Error {
 public:
  using Error::Error;
};

// The quintic coefficient L2(alpha) changed sign against L0 inside the
// validity disk; truncation-order conclusions no longer apply there.
class SignInversion : public Error {
 public:
  using Error::Error;
};

// A radial step produced rho < 0 (orbit left the domain of the polar map).
class NegativeRadius : public Error {
 public:
  using Error::Error;
};

// The circle equation degenerates (|L2| below the zero band); the quadratic
// in y = rho^2 has no two-root structure to solve.
class DegenerateQuadratic : public Error {
 public:
  using Error::Error;
};

// A sign profile that matches no classification row (impossible under the
// model assumptions; reachable only through inconsistent banded signs).
class InfeasibleProfile : public Error {
 public:
  using Error::Error;
};

// A series expansion requires a nonzero linear-in-alpha2 coefficient
// (implicit function theorem hypothesis) that the model violates.
class IftViolation : public Error {
 public:
  using Error::Error;
};

// An operation requiring the degeneracy condition a10*b01 - a01*b10 = 0
// was invoked on a model that is not degenerate within tolerance.
class NotDegenerate : public Error {
 public:
  using Error::Error;
};

// A probe that must start on a specific curve was given a point whose
// residual exceeds the zero band for that curve.
class NotOnCurve : public Error {
 public:
  using Error::Error;
};

// A probe expected a circle (e.g. the semistable circle on the collision
// curve) but the sign conditions exclude one at this point.
class NoCircle : public Error {
 public:
  using Error::Error;
};

// An analytic precondition of the requested check fails (e.g. the starting
// radius bound in the mixed-sign monotonicity case).
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// An orbit was started from an invalid state (rho0 < 0, non-finite input).
class InvalidStart : public Error {
 public:
  using Error::Error;
};

// A rendering grid with unsupported geometry: resolution below the minimum
// or an empty (inverted) window.
class InvalidResolution : public Error {
 public:
  using Error::Error;
};

// Configuration parsing / validation failure; `field()` names the offending
// entry with a JSON-path-like string such as "beta1[2].value".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Model construction invariant failures (zero L0, nonzero constant terms in
// beta1/beta2, theta0 outside (0, pi), non-positive epsilon).
class ModelInvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace chenciner
