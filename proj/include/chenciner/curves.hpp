#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "chenciner/errors.hpp"
#include "chenciner/model.hpp"

namespace chenciner {

enum class CurveKind { B1, B2, C };

inline const char* curve_name(CurveKind k) {
  switch (k) {
    case CurveKind::B1: return "B1";
    case CurveKind::B2: return "B2";
    default: return "C";
  }
}

// Fourth-order expansion alpha2 = k1 a1 + k2 a1^2 + k3 a1^3 + k4 a1^4 of a
// bifurcation curve, with exact rational coefficients. B1 carries the two
// grouped fourth-order sums sigma1/sigma2 from its closed form; C carries
// the quadratic separation coefficient gamma.
struct CurveExpansion {
  CurveKind kind = CurveKind::B1;
  std::array<Rational, 4> k{Rational(0), Rational(0), Rational(0), Rational(0)};
  Rational sigma1 = 0;
  Rational sigma2 = 0;
  Rational gamma = 0;
  bool has_gamma = false;

  double k_d(int order) const { return to_double(k.at(static_cast<size_t>(order) - 1)); }

  double eval(double a1) const {
    return ((k_d(4) * a1 + k_d(3)) * a1 + k_d(2)) * a1 * a1 + k_d(1) * a1;
  }
};

namespace detail {

// Dense univariate polynomial in a1 up to degree 4.
using Poly1 = std::array<Rational, 5>;

inline Poly1 poly_mul_trunc4(const Poly1& a, const Poly1& b) {
  Poly1 out{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Coefficient of a1^m in f(a1, K(a1)) where K(a1) = sum_n k[n] a1^n.
inline Poly1 substitute_curve(const ExactSeries& f, const Poly1& K) {
  Poly1 out{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  for (const auto& [ij, c] : f.terms()) {
    auto [i, j] = ij;
    if (i > 4) continue;
    Poly1 term{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
    term[0] = c;
    for (int t = 0; t < j; ++t) term = poly_mul_trunc4(term, K);
    for (int d = 0; d + i <= 4; ++d) out[d + i] += term[d];
  }
  return out;
}

}  // namespace detail

// Solves f(a1, w(a1)) = 0 for w = k1 a1 + ... + k4 a1^4 order by order.
// Requires f(0,0) = 0 and a nonzero linear coefficient f01 (implicit
// function theorem hypotheses); exact in rational arithmetic.
inline std::array<Rational, 4> ift_expand_quartic(const ExactSeries& f) {
  if (f.coefficient(0, 0) != 0)
    throw IftViolation("series has a nonzero constant term; no branch through the origin");
  Rational f01 = f.coefficient(0, 1);
  if (f01 == 0)
    throw IftViolation("zero linear coefficient in alpha2; implicit function theorem fails");
  detail::Poly1 K{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int m = 1; m <= 4; ++m) {
    detail::Poly1 composed = detail::substitute_curve(f, K);
    K[m] = -composed[m] / f01;
  }
  return {K[1], K[2], K[3], K[4]};
}

// Expansion of the curve beta1(alpha) = 0 by the closed-form coefficients
// c1..c4 in terms of the a_ij. Requires a01 != 0.
inline CurveExpansion expand_b1(const NormalFormModel& m) {
  Rational a01 = m.a(0, 1);
  if (a01 == 0) throw IftViolation("a01 = 0: beta1 = 0 is not a graph over alpha1");
  Rational c1 = -m.a(1, 0) / a01;
  Rational c2 = -(m.a(2, 0) + c1 * c1 * m.a(0, 2) + c1 * m.a(1, 1)) / a01;
  Rational c3 = -(m.a(3, 0) + c1 * c1 * m.a(1, 2) + c1 * c1 * c1 * m.a(0, 3) +
                  c1 * m.a(2, 1) + c2 * m.a(1, 1) + 2 * c1 * c2 * m.a(0, 2)) /
                a01;
  Rational sigma1 = m.a(3, 1) + 2 * c2 * m.a(1, 2) + 2 * c3 * m.a(0, 2);
  Rational sigma2 = m.a(0, 2) * c2 * c2 + m.a(2, 1) * c2 + m.a(4, 0) + c3 * m.a(1, 1);
  Rational c4 = -(m.a(0, 4) * c1 * c1 * c1 * c1 + m.a(1, 3) * c1 * c1 * c1 +
                  (m.a(2, 2) + 3 * c2 * m.a(0, 3)) * c1 * c1 + sigma1 * c1 + sigma2) /
                a01;
  CurveExpansion e;
  e.kind = CurveKind::B1;
  e.k = {c1, c2, c3, c4};
  e.sigma1 = sigma1;
  e.sigma2 = sigma2;
  return e;
}

namespace detail {

inline std::array<Rational, 4> b2_curve_coefficients(const NormalFormModel& m) {
  if (m.b(0, 1) == 0)
    throw IftViolation("b01 = 0: beta2 = 0 is not a graph over alpha1");
  return ift_expand_quartic(m.beta2_exact());
}

// Exact series of the discriminant delta = beta2^2 - 4 beta1 L2 up to total
// order 4.
inline ExactSeries delta_series(const NormalFormModel& m) {
  ExactSeries d = ExactSeries::truncated_product(m.beta2_exact(), m.beta2_exact(), 4);
  ExactSeries bl = ExactSeries::truncated_product(m.beta1_exact(), m.l2_exact(), 4);
  return d - bl.scaled(Rational(4));
}

inline std::array<Rational, 4> c_curve_coefficients(const NormalFormModel& m) {
  if (m.a(0, 1) == 0)
    throw IftViolation("a01 = 0: delta = 0 has no linear alpha2 coefficient");
  return ift_expand_quartic(delta_series(m));
}

inline std::array<Rational, 4> seed_coefficients(const NormalFormModel& m, CurveKind k) {
  switch (k) {
    case CurveKind::B1: return expand_b1(m).k;
    case CurveKind::B2: return b2_curve_coefficients(m);
    default: return c_curve_coefficients(m);
  }
}

}  // namespace detail

// Expansion of the curve beta2(alpha) = 0, computed by the generic implicit
// function theorem recurrence on the beta2 series. Only meaningful alongside
// B1/C for degenerate models, so the degeneracy condition is enforced.
inline CurveExpansion expand_b2(const NormalFormModel& m) {
  if (!m.is_degenerate())
    throw NotDegenerate("expand_b2 requires the degeneracy condition a10 b01 = a01 b10");
  CurveExpansion e;
  e.kind = CurveKind::B2;
  e.k = detail::b2_curve_coefficients(m);
  return e;
}

// Expansion m1..m4 of the circle-collision curve delta(alpha) = 0, computed
// by the implicit function theorem recurrence on the composed discriminant
// series (independent of the closed forms for c1..c4), plus the separation
// coefficient gamma = b02 c1^2 + b11 c1 + b20 + c2 b01.
inline CurveExpansion expand_c(const NormalFormModel& m) {
  if (!m.is_degenerate())
    throw NotDegenerate("expand_c requires the degeneracy condition a10 b01 = a01 b10");
  if (m.b(0, 1) == 0)
    throw IftViolation("b01 = 0: collision curve expansion undefined");
  CurveExpansion b1e = expand_b1(m);  // also checks a01 != 0
  CurveExpansion e;
  e.kind = CurveKind::C;
  e.k = detail::c_curve_coefficients(m);
  e.gamma = m.b(0, 2) * b1e.k[0] * b1e.k[0] + m.b(1, 1) * b1e.k[0] + m.b(2, 0) +
            b1e.k[1] * m.b(0, 1);
  e.has_gamma = true;
  return e;
}

struct CurveTrace {
  CurveKind kind = CurveKind::B1;
  std::vector<ParameterPoint> points;
  std::vector<double> residuals;          // |target| at each traced point
  std::vector<double> failed_alpha1;      // grid values with no bracketed root
};

// Numerically continues the curve: for each grid alpha1, solves
// target(alpha1, alpha2) = 0 with a bracketed secant/bisection hybrid seeded
// by the fourth-order expansion. Bracket failures and roots escaping the
// validity disk are recorded per point, not fatal.
inline CurveTrace trace_curve(const NormalFormModel& m, CurveKind kind,
                              const std::vector<double>& alpha1_grid) {
  for (double a1 : alpha1_grid)
    if (!(std::abs(a1) < m.epsilon()))
      throw OutOfValidityRadius("grid alpha1 = " + std::to_string(a1) +
                                " outside the validity disk");

  auto target = [&](double a1, double a2) -> double {
    switch (kind) {
      case CurveKind::B1: return m.beta1_series().eval(a1, a2);
      case CurveKind::B2: return m.beta2_series().eval(a1, a2);
      default: {
        double b1 = m.beta1_series().eval(a1, a2);
        double b2 = m.beta2_series().eval(a1, a2);
        double l2 = m.l2_series().eval(a1, a2);
        return b2 * b2 - 4.0 * b1 * l2;
      }
    }
  };

  std::array<Rational, 4> kx = detail::seed_coefficients(m, kind);
  std::array<double, 4> kd;
  for (int i = 0; i < 4; ++i) kd[i] = to_double(kx[static_cast<size_t>(i)]);

  const double tol = m.tolerances().trace_tol;
  CurveTrace out;
  out.kind = kind;
  for (double a1 : alpha1_grid) {
    double seed = ((kd[3] * a1 + kd[2]) * a1 + kd[1]) * a1 * a1 + kd[0] * a1;
    double w = std::max(1e-8, std::abs(a1) * a1 * a1);
    double lo = 0, hi = 0, flo = 0, fhi = 0;
    bool bracketed = false;
    for (int widen = 0; widen < 14; ++widen) {
      lo = seed - w;
      hi = seed + w;
      flo = target(a1, lo);
      fhi = target(a1, hi);
      if ((flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0)) {
        bracketed = true;
        break;
      }
      w *= 4.0;
    }
    if (!bracketed) {
      out.failed_alpha1.push_back(a1);
      continue;
    }
    double root = 0.5 * (lo + hi), froot = target(a1, root);
    for (int it = 0; it < 120 && std::abs(froot) > tol; ++it) {
      double cand;
      if (fhi != flo) {
        cand = lo - flo * (hi - lo) / (fhi - flo);  // secant through the bracket
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
      } else {
        cand = 0.5 * (lo + hi);
      }
      double fc = target(a1, cand);
      if ((flo <= 0.0) == (fc <= 0.0)) {
        lo = cand;
        flo = fc;
      } else {
        hi = cand;
        fhi = fc;
      }
      root = cand;
      froot = fc;
      if (hi - lo < 1e-17 * std::max(1.0, std::abs(seed))) break;
    }
    if (std::abs(froot) > tol || !(ParameterPoint{a1, root}.norm() < m.epsilon())) {
      out.failed_alpha1.push_back(a1);
      continue;
    }
    out.points.push_back({a1, root});
    out.residuals.push_back(std::abs(froot));
  }
  return out;
}

struct VerificationReport {
  bool pass = false;
  double max_residual = 0.0;
  double bound = 0.0;
};

// Compares traced points against the fourth-order expansion: pass iff the
// max |alpha2 - taylor4(alpha1)| over the trace is at most
// resid_const * (max |alpha1|)^5.
inline VerificationReport verify_expansion(const NormalFormModel& m, CurveKind kind,
                                           const CurveTrace& trace) {
  CurveExpansion e;
  switch (kind) {
    case CurveKind::B1: e = expand_b1(m); break;
    case CurveKind::B2: e = expand_b2(m); break;
    default: e = expand_c(m); break;
  }
  VerificationReport r;
  double amax = 0.0;
  for (size_t i = 0; i < trace.points.size(); ++i) {
    double res = std::abs(trace.points[i].alpha2 - e.eval(trace.points[i].alpha1));
    r.max_residual = std::max(r.max_residual, res);
    amax = std::max(amax, std::abs(trace.points[i].alpha1));
  }
  r.bound = m.tolerances().resid_const * std::pow(amax, 5);
  r.pass = r.max_residual <= r.bound;
  return r;
}

}  // namespace chenciner
