#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "chenciner/errors.hpp"
#include "chenciner/rational.hpp"
#include "chenciner/taylor_series.hpp"

namespace chenciner {

// Zero bands and check tolerances used across classification and curve work.
struct Tolerances {
  // Relative band for the degeneracy determinant a10*b01 - a01*b10.
  double degeneracy_tol = 1e-12;
  // |delta| <= delta_band_scale * max(1, beta2^2)  ==>  delta treated as 0.
  double delta_band_scale = 1e-9;
  // |beta_i| <= beta_band_scale * (1 + |alpha|)    ==>  beta_i treated as 0.
  double beta_band_scale = 1e-12;
  // Roots y with |y| below this band count as the trivial fixed point.
  double root_zero_band = 1e-12;
  // Residual target for curve tracing root solves.
  double trace_tol = 1e-12;
  // Expansion verification: max residual <= resid_const * max |alpha1|^5.
  double resid_const = 100.0;
};

struct ParameterPoint {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double norm() const { return std::hypot(alpha1, alpha2); }
};

// The three radial coefficients and the circle-equation discriminant at one
// parameter point. `delta` is always beta2^2 - 4*beta1*l2 of the other
// fields, evaluated with exactly that expression.
struct ModelEvaluation {
  ParameterPoint at;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double l2 = 0.0;
  double delta = 0.0;
};

inline int sign_of(double x) {
  if (x > 0.0) return 1;
  if (x < 0.0) return -1;
  return 0;
}

// Truncated radial normal form
//   rho  ->  rho * (1 + beta1(alpha) + beta2(alpha) rho^2 + L2(alpha) rho^4)
//   phi  ->  phi + theta0
// with exact rational coefficient series as the source of truth and baked
// double series for evaluation. Valid on the disk |alpha| < epsilon.
class NormalFormModel {
 public:
  NormalFormModel(ExactSeries beta1, ExactSeries beta2, ExactSeries l2,
                  double theta0, double epsilon, Tolerances tol = {})
      : beta1_x_(std::move(beta1)),
        beta2_x_(std::move(beta2)),
        l2_x_(std::move(l2)),
        theta0_(theta0),
        epsilon_(epsilon),
        tol_(tol) {
    if (beta1_x_.coefficient(0, 0) != 0)
      throw ModelInvariantError("beta1 has a nonzero constant term");
    if (beta2_x_.coefficient(0, 0) != 0)
      throw ModelInvariantError("beta2 has a nonzero constant term");
    if (l2_x_.coefficient(0, 0) == 0)
      throw ModelInvariantError("L2 has zero constant term (L0 must be nonzero)");
    if (!(theta0_ > 0.0 && theta0_ < std::numbers::pi))
      throw ModelInvariantError("theta0 must lie in (0, pi)");
    if (!(epsilon_ > 0.0)) throw ModelInvariantError("epsilon must be positive");
    beta1_d_ = to_double_series(beta1_x_);
    beta2_d_ = to_double_series(beta2_x_);
    l2_d_ = to_double_series(l2_x_);
    L0_ = to_double(l2_x_.coefficient(0, 0));
  }

  const ExactSeries& beta1_exact() const { return beta1_x_; }
  const ExactSeries& beta2_exact() const { return beta2_x_; }
  const ExactSeries& l2_exact() const { return l2_x_; }
  const DoubleSeries& beta1_series() const { return beta1_d_; }
  const DoubleSeries& beta2_series() const { return beta2_d_; }
  const DoubleSeries& l2_series() const { return l2_d_; }

  Rational a(int i, int j) const { return beta1_x_.coefficient(i, j); }
  Rational b(int i, int j) const { return beta2_x_.coefficient(i, j); }
  Rational l(int i, int j) const { return l2_x_.coefficient(i, j); }

  double L0() const { return L0_; }
  Rational L0_exact() const { return l2_x_.coefficient(0, 0); }
  double theta0() const { return theta0_; }
  double epsilon() const { return epsilon_; }
  const Tolerances& tolerances() const { return tol_; }

  ModelEvaluation evaluate(const ParameterPoint& p) const {
    if (!(p.norm() < epsilon_))
      throw OutOfValidityRadius("|alpha| = " + std::to_string(p.norm()) +
                                " is not inside the validity disk of radius " +
                                std::to_string(epsilon_));
    ModelEvaluation ev;
    ev.at = p;
    ev.beta1 = beta1_d_.eval(p.alpha1, p.alpha2);
    ev.beta2 = beta2_d_.eval(p.alpha1, p.alpha2);
    ev.l2 = l2_d_.eval(p.alpha1, p.alpha2);
    if (sign_of(ev.l2) != sign_of(L0_))
      throw SignInversion("L2 changed sign inside the validity disk at (" +
                          std::to_string(p.alpha1) + ", " + std::to_string(p.alpha2) + ")");
    ev.delta = ev.beta2 * ev.beta2 - 4.0 * ev.beta1 * ev.l2;
    return ev;
  }

  // Exact determinant of the linear parts: a10*b01 - a01*b10.
  Rational degeneracy_determinant() const {
    return a(1, 0) * b(0, 1) - a(0, 1) * b(1, 0);
  }

  // Relative test: |det| <= degeneracy_tol * max(1, |a10 b01|, |a01 b10|),
  // evaluated in exact arithmetic so that exactly degenerate coefficients
  // pass regardless of scale.
  bool is_degenerate() const {
    Rational p1 = a(1, 0) * b(0, 1);
    Rational p2 = a(0, 1) * b(1, 0);
    Rational scale(1);
    if (abs(p1) > scale) scale = abs(p1);
    if (abs(p2) > scale) scale = abs(p2);
    return abs(p1 - p2) <= rational_from_double(tol_.degeneracy_tol) * scale;
  }

  // One radial step of the truncated map; rejects exits to rho < 0.
  static double radial_step(const ModelEvaluation& ev, double rho) {
    double y = rho * rho;
    return rho * (1.0 + ev.beta1 + y * (ev.beta2 + ev.l2 * y));
  }

  double rho_step(const ParameterPoint& p, double rho) const {
    double next = radial_step(evaluate(p), rho);
    if (next < 0.0)
      throw NegativeRadius("radial step left the half-line: rho " +
                           std::to_string(rho) + " -> " + std::to_string(next));
    return next;
  }

  double phi_step(double phi) const {
    double next = std::fmod(phi + theta0_, 2.0 * std::numbers::pi);
    if (next < 0.0) next += 2.0 * std::numbers::pi;
    return next;
  }

 private:
  ExactSeries beta1_x_, beta2_x_, l2_x_;
  DoubleSeries beta1_d_, beta2_d_, l2_d_;
  double theta0_;
  double epsilon_;
  Tolerances tol_;
  double L0_ = 0.0;
};

}  // namespace chenciner
