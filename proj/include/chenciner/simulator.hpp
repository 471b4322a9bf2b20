#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "chenciner/classifier.hpp"
#include "chenciner/errors.hpp"
#include "chenciner/model.hpp"

namespace chenciner {

struct SimulationConfig {
  std::size_t max_steps = 1'000'000;
  double convergence_tol = 1e-6;
  double escape_radius = 1.0;
  std::size_t window = 100;
};

enum class OrbitVerdict {
  ConvergedToOrigin,
  ConvergedToCircle,
  Escaped,
  MaxStepsReached,
};

inline const char* verdict_name(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::ConvergedToOrigin: return "converged_to_origin";
    case OrbitVerdict::ConvergedToCircle: return "converged_to_circle";
    case OrbitVerdict::Escaped: return "escaped";
    default: return "max_steps_reached";
  }
}

struct OrbitState {
  double rho = 0.0;
  double phi = 0.0;
  double x() const { return rho * std::cos(phi); }
  double y() const { return rho * std::sin(phi); }
};

struct OrbitTrace {
  std::vector<OrbitState> states;  // includes the initial state
  OrbitVerdict verdict = OrbitVerdict::MaxStepsReached;
  double circle_radius = 0.0;  // window mean when verdict is ConvergedToCircle
  std::size_t steps = 0;       // map applications performed
};

// Iterates the polar map from (rho0, phi0). The radial sequence is computed
// before the angle and never depends on phi. A radius falling to
// convergence_tol ends the orbit as ConvergedToOrigin. Circles are judged
// on non-overlapping windows: the max deviation from the window mean must
// be within convergence_tol and the mean must be a radial fixed point to
// relative tolerance (a slow geometric decay fails that test at any scale,
// so it is never mistaken for a circle). A step that leaves [0, inf) ends
// the orbit as Escaped without recording the offending state.
inline OrbitTrace iterate_orbit(const NormalFormModel& m, const ParameterPoint& p,
                                double rho0, double phi0, const SimulationConfig& cfg) {
  if (!(rho0 >= 0.0) || !std::isfinite(rho0) || !std::isfinite(phi0))
    throw InvalidStart("orbit start requires finite phi0 and rho0 >= 0, got rho0 = " +
                       std::to_string(rho0));
  if (cfg.window == 0) throw InvalidStart("window must be positive");
  ModelEvaluation ev = m.evaluate(p);

  OrbitTrace tr;
  tr.states.reserve(std::min<std::size_t>(cfg.max_steps + 1, 1u << 20));
  double rho = rho0;
  double phi = std::fmod(phi0, 2.0 * std::numbers::pi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  tr.states.push_back({rho, phi});

  std::vector<double> window;
  window.reserve(cfg.window);
  for (std::size_t n = 0; n < cfg.max_steps; ++n) {
    double next = NormalFormModel::radial_step(ev, rho);
    if (next < 0.0 || !std::isfinite(next)) {
      tr.verdict = OrbitVerdict::Escaped;
      return tr;
    }
    rho = next;
    phi = m.phi_step(phi);
    tr.states.push_back({rho, phi});
    ++tr.steps;
    if (rho > cfg.escape_radius) {
      tr.verdict = OrbitVerdict::Escaped;
      return tr;
    }
    if (rho <= cfg.convergence_tol) {
      tr.verdict = OrbitVerdict::ConvergedToOrigin;
      return tr;
    }
    window.push_back(rho);
    if (window.size() == cfg.window) {
      double mean = 0.0;
      for (double v : window) mean += v;
      mean /= static_cast<double>(window.size());
      double maxdev = 0.0;
      for (double v : window) maxdev = std::max(maxdev, std::abs(v - mean));
      if (maxdev <= cfg.convergence_tol &&
          std::abs(NormalFormModel::radial_step(ev, mean) - mean) <=
              cfg.convergence_tol * mean) {
        tr.verdict = OrbitVerdict::ConvergedToCircle;
        tr.circle_radius = mean;
        return tr;
      }
      window.clear();
    }
  }
  tr.verdict = OrbitVerdict::MaxStepsReached;
  return tr;
}

struct SemistabilityReport {
  double radius = 0.0;           // sqrt(-beta2 / (2 L0))
  bool outer_approaches = false;  // orbit from 1.1 r moved monotonically to r
  bool inner_approaches = false;  // orbit from 0.9 r moved monotonically to r
  // True when the one-sided behavior matches a semistable circle:
  // L0 < 0: attracting outside, repelling inside; L0 > 0: mirrored.
  bool consistent = false;
  double outer_final_distance = 0.0;
  double inner_final_distance = 0.0;
};

namespace detail {

// Runs the radial map and reports whether |rho - r| shrinks monotonically to
// at most half its initial value. Stops early once the distance has either
// halved or grown past 4x (verdict then decided).
inline bool distance_shrinks(const ModelEvaluation& ev, double rho0, double r,
                             std::size_t max_steps, double* final_distance) {
  double d0 = std::abs(rho0 - r);
  double rho = rho0;
  double d = d0;
  bool monotone = true;
  for (std::size_t n = 0; n < max_steps; ++n) {
    double next = NormalFormModel::radial_step(ev, rho);
    if (next < 0.0 || !std::isfinite(next)) {
      monotone = false;
      break;
    }
    double dn = std::abs(next - r);
    if (dn > d + 1e-15) {
      monotone = false;
      rho = next;
      d = dn;
      break;
    }
    rho = next;
    d = dn;
    if (d <= 0.5 * d0) break;
    if (d >= 4.0 * d0) break;
  }
  *final_distance = d;
  return monotone && d <= 0.5 * d0;
}

}  // namespace detail

// Probes one-sided stability of the double-root circle on the collision
// curve delta = 0. Launches orbits from 1.1x and 0.9x the circle radius
// sqrt(-beta2/(2 L0)) and reports whether each side approaches the circle.
inline SemistabilityReport semistability_probe(const NormalFormModel& m,
                                               const ParameterPoint& p,
                                               const SimulationConfig& cfg) {
  ModelEvaluation ev = m.evaluate(p);
  double band = m.tolerances().delta_band_scale * std::max(1.0, ev.beta2 * ev.beta2);
  if (std::abs(ev.delta) > band)
    throw NotOnCurve("not on the collision curve: |delta| = " + std::to_string(ev.delta));
  if (!(ev.beta2 * m.L0() < 0.0))
    throw NoCircle("collision at this point has no positive circle (beta2 * L0 >= 0)");

  SemistabilityReport rep;
  double y = -ev.beta2 / (2.0 * m.L0());
  rep.radius = std::sqrt(y);
  rep.outer_approaches = detail::distance_shrinks(ev, 1.1 * rep.radius, rep.radius,
                                                  cfg.max_steps, &rep.outer_final_distance);
  rep.inner_approaches = detail::distance_shrinks(ev, 0.9 * rep.radius, rep.radius,
                                                  cfg.max_steps, &rep.inner_final_distance);
  rep.consistent = m.L0() < 0.0 ? (rep.outer_approaches && !rep.inner_approaches)
                                : (rep.inner_approaches && !rep.outer_approaches);
  return rep;
}

struct MonotonicityReport {
  bool monotone = true;
  int direction = 0;              // +1 strictly increasing, -1 strictly decreasing
  std::size_t violation_index = 0;  // first step breaking strictness (when !monotone)
  std::size_t steps_used = 0;
  double final_rho = 0.0;
};

// Checks strict monotonicity of the reduced radial recurrence
//   rho_{n+1} = rho_n + rho_n^3 (beta2 + L2 rho_n^2)
// on the primary curve beta1 = 0. The expected direction is the sign of
// beta2 (of L2 when beta2 sits in the zero band). In the mixed-sign case
// beta2 * L2 < 0 the start must satisfy rho0^2 < -beta2/L2, the largest
// radius for which one step cannot cross the equilibrium.
inline MonotonicityReport monotonicity_check(const NormalFormModel& m,
                                             const ParameterPoint& p, double rho0,
                                             std::size_t n) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0))
    throw InvalidStart("monotonicity check requires rho0 > 0");
  ModelEvaluation ev = m.evaluate(p);
  double beta_band = m.tolerances().beta_band_scale * (1.0 + ev.at.norm());
  if (std::abs(ev.beta1) > beta_band)
    throw PreconditionViolated("point is not on the primary curve: beta1 = " +
                               std::to_string(ev.beta1));
  if (ev.beta2 * ev.l2 < 0.0 && !(rho0 * rho0 < -ev.beta2 / ev.l2))
    throw PreconditionViolated("mixed-sign case requires rho0^2 < -beta2/L2");

  MonotonicityReport rep;
  int s2 = std::abs(ev.beta2) <= beta_band ? 0 : sign_of(ev.beta2);
  rep.direction = s2 != 0 ? s2 : sign_of(ev.l2);
  double rho = rho0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = rho * rho;
    double next = rho + rho * y * (ev.beta2 + ev.l2 * y);
    ++rep.steps_used;
    if (next == rho || rho > 1e100) break;  // stalled at fp resolution or blown up
    bool ok = rep.direction > 0 ? next > rho : (next < rho && next > 0.0);
    if (!ok) {
      rep.monotone = false;
      rep.violation_index = i;
      rep.final_rho = next;
      return rep;
    }
    rho = next;
  }
  rep.final_rho = rho;
  return rep;
}

}  // namespace chenciner
