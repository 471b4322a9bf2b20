#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chenciner/errors.hpp"
#include "chenciner/model.hpp"

namespace chenciner {

enum class Stability {
  Stable,
  Unstable,
  // Attracting from outside, repelling toward the origin (L0 < 0 collisions).
  SemistableOuterStable,
  // Attracting from inside, repelling outward (L0 > 0 collisions).
  SemistableInnerStable,
};

// How the origin's stability is decided at this point.
enum class OriginMode {
  Linear,          // beta1 != 0: sign of beta1 decides
  NonlinearBeta2,  // beta1 = 0, beta2 != 0: sign of beta2 decides
  NonlinearL0,     // beta1 = beta2 = 0: sign of L0 decides
};

// Banded signs (-1, 0, +1). delta/beta1/beta2 use the zero bands from
// Tolerances; L0 is never banded (it is nonzero by model invariant).
struct SignProfile {
  int delta = 0;
  int beta1 = 0;
  int beta2 = 0;
  int L0 = 0;
};

struct CircleRoots {
  bool has_real = false;
  double y1 = 0.0;  // (sqrt(delta) - beta2) / (2 l2)
  double y2 = 0.0;  // -(sqrt(delta) + beta2) / (2 l2)
};

struct CircleRecord {
  double y = 0.0;       // squared radius, root of l2 y^2 + beta2 y + beta1 = 0
  double radius = 0.0;  // sqrt(y)
  double multiplier = 0.0;
  Stability stability = Stability::Stable;
};

struct CircleInventory {
  Stability origin = Stability::Stable;
  OriginMode origin_mode = OriginMode::Linear;
  int region = 0;  // 1..8
  std::vector<CircleRecord> circles;  // ascending radius
  SignProfile profile;
};

inline SignProfile sign_profile(const ModelEvaluation& ev, double L0,
                                const Tolerances& tol) {
  SignProfile s;
  double an = ev.at.norm();
  double beta_band = tol.beta_band_scale * (1.0 + an);
  double delta_band = tol.delta_band_scale * std::max(1.0, ev.beta2 * ev.beta2);
  s.beta1 = std::abs(ev.beta1) <= beta_band ? 0 : sign_of(ev.beta1);
  s.beta2 = std::abs(ev.beta2) <= beta_band ? 0 : sign_of(ev.beta2);
  s.delta = std::abs(ev.delta) <= delta_band ? 0 : sign_of(ev.delta);
  s.L0 = sign_of(L0);
  return s;
}

// Roots of the invariant-circle equation l2 y^2 + beta2 y + beta1 = 0 in
// y = rho^2, in the fixed arrangement y1 = (sqrt(d)-b2)/(2 l2),
// y2 = -(sqrt(d)+b2)/(2 l2). For l2 < 0, y1 <= y2; for l2 > 0, y2 <= y1.
inline CircleRoots solve_circle_equation(const ModelEvaluation& ev) {
  if (std::abs(ev.l2) <= 1e-12)
    throw DegenerateQuadratic("circle equation is not quadratic: |L2| = " +
                              std::to_string(std::abs(ev.l2)));
  CircleRoots r;
  if (ev.delta < 0.0) return r;
  double sq = std::sqrt(ev.delta);
  r.has_real = true;
  r.y1 = (sq - ev.beta2) / (2.0 * ev.l2);
  r.y2 = -(sq + ev.beta2) / (2.0 * ev.l2);
  return r;
}

enum class RootKind { Y1, Y2 };

// Multiplier of the circle fixed point of the radial map: 1 + 2 y sqrt(d)
// for y1, 1 - 2 y sqrt(d) for y2.
inline double circle_multiplier(const ModelEvaluation& ev, double y, RootKind which) {
  double sq = std::sqrt(std::max(ev.delta, 0.0));
  return which == RootKind::Y1 ? 1.0 + 2.0 * y * sq : 1.0 - 2.0 * y * sq;
}

// General radial-map derivative at a circle fixed point y:
// d/drho [rho(1 + b1 + b2 rho^2 + l2 rho^4)] = 1 + 2 y (b2 + 2 l2 y)
// using b1 = -(b2 y + l2 y^2).
inline double radial_derivative_at(const ModelEvaluation& ev, double y) {
  return 1.0 + 2.0 * y * (ev.beta2 + 2.0 * ev.l2 * y);
}

// Origin stability with exact double comparisons (no bands): beta1 decides;
// on beta1 = 0 beta2 decides; on both zero L0 decides.
inline Stability origin_stability(const ModelEvaluation& ev, double L0) {
  if (ev.beta1 != 0.0) return ev.beta1 < 0.0 ? Stability::Stable : Stability::Unstable;
  if (ev.beta2 != 0.0) return ev.beta2 < 0.0 ? Stability::Stable : Stability::Unstable;
  return L0 < 0.0 ? Stability::Stable : Stability::Unstable;
}

// Suggested escape/scan radius covering all circles with margin.
inline double default_rho_max(const ModelEvaluation& ev, double L0) {
  double d4 = std::pow(std::max(ev.delta, 0.0), 0.25);
  return 2.0 * std::max(1.0, std::sqrt(std::abs(ev.beta2 / L0)) + d4);
}

namespace detail {

inline Stability origin_from_profile(const SignProfile& s) {
  if (s.beta1 != 0) return s.beta1 < 0 ? Stability::Stable : Stability::Unstable;
  if (s.beta2 != 0) return s.beta2 < 0 ? Stability::Stable : Stability::Unstable;
  return s.L0 < 0 ? Stability::Stable : Stability::Unstable;
}

inline std::string profile_string(const SignProfile& s) {
  auto c = [](int v) { return v > 0 ? '+' : (v < 0 ? '-' : '0'); };
  return std::string("(delta ") + c(s.delta) + ", L0 " + c(s.L0) + ", beta1 " +
         c(s.beta1) + ", beta2 " + c(s.beta2) + ")";
}

}  // namespace detail

// Classifies a parameter point into one of the eight dynamic regions:
//   1: stable origin, one unstable circle     2: unstable origin, no circle
//   3: unstable origin, one stable circle     4: stable origin, no circle
//   5: stable origin, semistable circle       6: unstable origin, semistable circle
//   7: stable origin, unstable inner + stable outer circle
//   8: unstable origin, stable inner + unstable outer circle
// Dispatch is on the banded sign profile; the beta1 = 0 branch never
// consults the delta sign (on that axis the circle structure follows from
// beta2 and L0 alone, and the delta band is unreliable when beta2 is small).
inline CircleInventory classify(const ModelEvaluation& ev, double L0,
                                const Tolerances& tol) {
  SignProfile s = sign_profile(ev, L0, tol);
  CircleInventory inv;
  inv.profile = s;
  inv.origin = detail::origin_from_profile(s);
  inv.origin_mode = s.beta1 != 0 ? OriginMode::Linear
                    : (s.beta2 != 0 ? OriginMode::NonlinearBeta2 : OriginMode::NonlinearL0);

  auto push_circle = [&](double y, double mult) {
    CircleRecord c;
    c.y = y;
    c.radius = std::sqrt(y);
    c.multiplier = mult;
    c.stability = mult > 1.0   ? Stability::Unstable
                  : mult < 1.0 ? Stability::Stable
                  : (s.L0 < 0 ? Stability::SemistableOuterStable
                              : Stability::SemistableInnerStable);
    inv.circles.push_back(c);
  };

  if (s.beta1 == 0) {
    // On the primary curve beta1 = 0: roots collapse to {0, -beta2/l2}.
    if (s.beta2 != 0) {
      double y = -ev.beta2 / ev.l2;
      if (y > tol.root_zero_band) {
        push_circle(y, radial_derivative_at(ev, y));
        inv.region = inv.circles.front().stability == Stability::Stable ? 3 : 1;
      } else {
        inv.region = s.beta2 > 0 ? 2 : 4;
      }
    } else {
      inv.region = s.L0 > 0 ? 2 : 4;
    }
    return inv;
  }

  // Off the primary curve. A non-positive discriminant forces
  // beta1 * L0 > 0; anything else is a contradictory banded profile.
  if (s.delta <= 0 && s.beta1 != s.L0)
    throw InfeasibleProfile("delta <= 0 requires sign(beta1) == sign(L0): " +
                            detail::profile_string(s));

  if (s.delta < 0) {
    inv.region = s.L0 > 0 ? 2 : 4;
    return inv;
  }

  if (s.delta == 0) {
    // Collision curve: double root y = -beta2 / (2 l2).
    double y = -ev.beta2 / (2.0 * ev.l2);
    if (s.beta2 == -s.L0 && y > tol.root_zero_band) {
      push_circle(y, 1.0);  // analytic multiplier at a double root
      inv.region = s.L0 < 0 ? 5 : 6;
    } else {
      inv.region = s.L0 > 0 ? 2 : 4;
    }
    return inv;
  }

  // delta > 0: full quadratic.
  CircleRoots roots = solve_circle_equation(ev);
  struct Cand {
    double y;
    RootKind kind;
  };
  std::vector<Cand> admissible;
  if (roots.y1 > tol.root_zero_band) admissible.push_back({roots.y1, RootKind::Y1});
  if (roots.y2 > tol.root_zero_band) admissible.push_back({roots.y2, RootKind::Y2});

  for (const Cand& c : admissible)
    push_circle(c.y, circle_multiplier(ev, c.y, c.kind));
  std::sort(inv.circles.begin(), inv.circles.end(),
            [](const CircleRecord& a, const CircleRecord& b) { return a.radius < b.radius; });

  if (inv.circles.size() == 2) {
    inv.region = s.L0 < 0 ? 7 : 8;
    if (s.beta1 != s.L0)
      throw InfeasibleProfile("two circles with sign(beta1) != sign(L0): " +
                              detail::profile_string(s));
  } else if (inv.circles.size() == 1) {
    bool circle_stable = inv.circles.front().stability == Stability::Stable;
    inv.region = circle_stable ? 3 : 1;
    bool origin_stable = inv.origin == Stability::Stable;
    if (origin_stable == circle_stable)
      throw InfeasibleProfile("one circle with matching origin stability: " +
                              detail::profile_string(s));
  } else {
    inv.region = inv.origin == Stability::Stable ? 4 : 2;
  }
  return inv;
}

inline CircleInventory classify(const NormalFormModel& m, const ParameterPoint& p) {
  return classify(m.evaluate(p), m.L0(), m.tolerances());
}

}  // namespace chenciner
