#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "chenciner/classifier.hpp"
#include "chenciner/curves.hpp"
#include "chenciner/diagram.hpp"
#include "chenciner/random_models.hpp"
#include "chenciner/simulator.hpp"

namespace chenciner {

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;  // individual checks exercised
  std::string detail;     // first counterexample, empty when pass
};

struct VerifyOptions {
  std::uint64_t seed = 20260823;
  int models = 40;
  int points_per_model = 30;
  int bruteforce_samples = 20001;
};

// Counts strict sign changes of the radial displacement
// g(rho) = beta1 + beta2 rho^2 + l2 rho^4 on [rho_min, rho_max]; each
// transversal invariant circle contributes exactly one.
inline int count_sign_changes_radial(const ModelEvaluation& ev, double rho_min,
                                     double rho_max, int samples) {
  auto g = [&](double rho) {
    double y = rho * rho;
    return ev.beta1 + y * (ev.beta2 + ev.l2 * y);
  };
  int changes = 0;
  double prev = g(rho_min);
  for (int i = 1; i < samples; ++i) {
    double rho = rho_min + (rho_max - rho_min) * i / (samples - 1);
    double cur = g(rho);
    if (prev * cur < 0.0) ++changes;
    if (cur != 0.0) prev = cur;
  }
  return changes;
}

namespace verify_detail {

struct Failure {
  bool any = false;
  std::string detail;
  void record(const std::string& d) {
    if (!any) detail = d;
    any = true;
  }
};

inline std::string point_str(int model_idx, const ParameterPoint& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "model %d at (%.17g, %.17g)", model_idx, p.alpha1,
                p.alpha2);
  return buf;
}

// Sum of |coefficients| of all terms of total order >= min_order.
inline double tail_coefficient_sum(const ExactSeries& s, int min_order) {
  double k = 0.0;
  for (const auto& [ij, c] : s.terms())
    if (ij.first + ij.second >= min_order) k += std::abs(to_double(c));
  return k;
}

// Discriminant series without truncation (orders up to 6 for the default
// generator), for rigorous remainder bounds.
inline ExactSeries full_delta_series(const NormalFormModel& m) {
  ExactSeries b2sq = ExactSeries::truncated_product(m.beta2_exact(), m.beta2_exact(), 64);
  ExactSeries b1l2 = ExactSeries::truncated_product(m.beta1_exact(), m.l2_exact(), 64);
  return b2sq - b1l2.scaled(Rational(4));
}

}  // namespace verify_detail

// Exact Taylor-coefficient identities tying the three curve expansions
// together: the collision-curve coefficients match the primary-curve ones
// through third order, and the fourth-order gap is gamma^2 / (4 L0 a01).
inline PropertyResult prop_expansion_identities(const VerifyOptions& opt) {
  PropertyResult r{.name = "expansion_identities"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed);
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    CurveExpansion b1 = expand_b1(m);
    CurveExpansion b2 = expand_b2(m);
    CurveExpansion c = expand_c(m);
    Rational gap = c.gamma * c.gamma / (4 * m.L0_exact() * m.a(0, 1));
    ++r.cases;
    if (b1.k[0] != b2.k[0] || b1.k[0] != c.k[0])
      fail.record("first-order tangency broken in model " + std::to_string(k));
    if (c.k[1] != b1.k[1])
      fail.record("m2 != c2 in model " + std::to_string(k));
    if (c.k[2] != b1.k[2])
      fail.record("m3 != c3 in model " + std::to_string(k));
    if (c.k[3] - b1.k[3] != gap)
      fail.record("m4 - c4 != gamma^2/(4 L0 a01) in model " + std::to_string(k));
    if (c.gamma != 0 && sign_of(c.k[3] - b1.k[3]) != sign_of(m.L0_exact() * m.a(0, 1)))
      fail.record("sign(m4 - c4) != sign(L0 a01) in model " + std::to_string(k));
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// Traced curves agree with their fourth-order expansions to O(|alpha1|^5):
// the empirical constant max |alpha2 - taylor4| / |alpha1|^5 must not grow
// when the grid scale is halved. A fixed constant would be wrong here;
// random models can have fifth-order curve coefficients of any size.
inline PropertyResult prop_expansion_residuals(const VerifyOptions& opt) {
  PropertyResult r{.name = "expansion_residuals"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 1);
  auto grid_at = [](double scale) {
    std::vector<double> g;
    for (int i = -10; i <= 10; ++i) g.push_back(scale * i / 10.0);
    return g;
  };
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    double scale = std::min(0.03, 0.3 * m.epsilon());
    for (CurveKind kind : {CurveKind::B1, CurveKind::B2, CurveKind::C}) {
      CurveExpansion e;
      switch (kind) {
        case CurveKind::B1: e = expand_b1(m); break;
        case CurveKind::B2: e = expand_b2(m); break;
        default: e = expand_c(m); break;
      }
      std::array<double, 4> kd;
      for (size_t i = 0; i < 4; ++i) kd[i] = to_double(e.k[i]);
      auto emp = [&](const CurveTrace& tr, double min_a1, double* dev_out) {
        double c = 0.0, dev_max = 0.0;
        for (size_t i = 0; i < tr.points.size(); ++i) {
          double a1 = tr.points[i].alpha1;
          double t4 = ((kd[3] * a1 + kd[2]) * a1 + kd[1]) * a1 * a1 + kd[0] * a1;
          double dev = std::abs(tr.points[i].alpha2 - t4);
          dev_max = std::max(dev_max, dev);
          if (std::abs(a1) >= min_a1)
            c = std::max(c, dev / std::pow(std::abs(a1), 5));
        }
        if (dev_out) *dev_out = dev_max;
        return c;
      };
      CurveTrace full = trace_curve(m, kind, grid_at(scale));
      CurveTrace half = trace_curve(m, kind, grid_at(0.5 * scale));
      ++r.cases;
      if (full.points.size() < 11 || half.points.size() < 11) continue;  // trace unstable
      double dev_half = 0.0;
      double c_half = emp(half, 0.25 * scale, &dev_half);
      double c_full = emp(full, 0.5 * scale, nullptr);
      if (dev_half <= 1e-9) continue;  // residual at the trace noise floor
      if (c_full == 0.0) continue;     // no outer full-scale points survived
      if (c_half > 2.5 * c_full) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s empirical O(a1^5) constant grew %.3g -> %.3g in model %d",
                      curve_name(kind), c_full, c_half, k);
        fail.record(buf);
      }
    }
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// Classified circle inventories agree with a brute-force scan of the radial
// displacement, and reported multipliers with a central difference of the
// radial map. Points too close to a curve band or with circles below the
// scan resolution are skipped.
inline PropertyResult prop_classifier_vs_bruteforce(const VerifyOptions& opt) {
  PropertyResult r{.name = "classifier_vs_bruteforce"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 2);
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    for (int q = 0; q < opt.points_per_model; ++q) {
      ParameterPoint p = gen.point(m.epsilon());
      ModelEvaluation ev;
      try {
        ev = m.evaluate(p);
      } catch (const Error&) {
        continue;
      }
      SignProfile s = sign_profile(ev, m.L0(), m.tolerances());
      if (s.delta == 0 || s.beta1 == 0 || s.beta2 == 0) continue;

      CircleInventory inv;
      try {
        inv = classify(ev, m.L0(), m.tolerances());
      } catch (const InfeasibleProfile& e) {
        fail.record(std::string(e.what()) + " for " + verify_detail::point_str(k, p));
        continue;
      }

      // Feasibility: a negative discriminant forces sign(beta1) = sign(L0).
      ++r.cases;
      if (s.delta < 0 && s.beta1 != s.L0)
        fail.record("feasibility broken for " + verify_detail::point_str(k, p));

      double rho_min = 1e-5;
      double rho_max = default_rho_max(ev, m.L0());
      double spacing = (rho_max - rho_min) / (opt.bruteforce_samples - 1);
      bool resolvable = true;
      for (const CircleRecord& c : inv.circles) {
        if (c.radius < 10.0 * spacing || c.radius > rho_max) resolvable = false;
        if (std::abs(c.multiplier - 1.0) < 2e-3) resolvable = false;
      }
      if (inv.circles.size() == 2 &&
          inv.circles[1].radius - inv.circles[0].radius < 10.0 * spacing)
        resolvable = false;
      if (!resolvable) continue;

      int expect = static_cast<int>(inv.circles.size());
      int got = count_sign_changes_radial(ev, rho_min, rho_max, opt.bruteforce_samples);
      ++r.cases;
      if (got != expect) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "circle count %d != scan %d for ", expect, got);
        fail.record(buf + verify_detail::point_str(k, p));
      }

      for (const CircleRecord& c : inv.circles) {
        double h = 1e-6 * std::max(1.0, c.radius);
        double fd = (NormalFormModel::radial_step(ev, c.radius + h) -
                     NormalFormModel::radial_step(ev, c.radius - h)) /
                    (2.0 * h);
        ++r.cases;
        if (std::abs(fd - c.multiplier) > 1e-5 * std::max(1.0, std::abs(c.multiplier)))
          fail.record("multiplier mismatch for " + verify_detail::point_str(k, p));
        ++r.cases;
        double res = std::abs(NormalFormModel::radial_step(ev, c.radius) - c.radius);
        if (res > 1e-12 * std::max(1.0, c.radius))
          fail.record("fixed-point residual for " + verify_detail::point_str(k, p));
      }
    }
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// Strict monotonicity of the reduced radial recurrence on the traced
// primary curve.
inline PropertyResult prop_monotonicity(const VerifyOptions& opt) {
  PropertyResult r{.name = "reduced_map_monotonicity"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 3);
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    CurveTrace tr = trace_curve(m, CurveKind::B1, {-0.02, -0.008, 0.008, 0.02});
    for (const ParameterPoint& p : tr.points) {
      ModelEvaluation ev = m.evaluate(p);
      double rho0 = 0.3;
      if (ev.beta2 * ev.l2 < 0.0)
        rho0 = 0.5 * std::sqrt(-ev.beta2 / ev.l2);
      if (!(rho0 > 0.0)) continue;
      MonotonicityReport rep = monotonicity_check(m, p, rho0, 2000);
      ++r.cases;
      if (!rep.monotone)
        fail.record("monotonicity broken at step " + std::to_string(rep.violation_index) +
                    " for " + verify_detail::point_str(k, p));
    }
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// |delta + 4 L0 (a10 a1 + a01 a2)| stays within K r^2 on circles |alpha| = r,
// where K is the absolute coefficient sum of the order >= 2 remainder of
// the exact discriminant series (a rigorous bound for r <= 1).
inline PropertyResult prop_delta_leading_term(const VerifyOptions& opt) {
  PropertyResult r{.name = "delta_leading_term"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 4);
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    double K = verify_detail::tail_coefficient_sum(verify_detail::full_delta_series(m), 2);
    double a10 = to_double(m.a(1, 0)), a01 = to_double(m.a(0, 1));
    for (double radius : {1e-2, 1e-3, 1e-4}) {
      double worst = 0.0;
      for (int t = 0; t < 64; ++t) {
        double ang = 2.0 * std::numbers::pi * t / 64;
        ParameterPoint p{radius * std::cos(ang), radius * std::sin(ang)};
        double b1 = m.beta1_series().eval(p.alpha1, p.alpha2);
        double b2 = m.beta2_series().eval(p.alpha1, p.alpha2);
        double l2 = m.l2_series().eval(p.alpha1, p.alpha2);
        double delta = b2 * b2 - 4.0 * b1 * l2;
        double rem = delta + 4.0 * m.L0() * (a10 * p.alpha1 + a01 * p.alpha2);
        worst = std::max(worst, std::abs(rem));
      }
      ++r.cases;
      if (worst > K * radius * radius + 1e-13) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "remainder %.3g > %.3g at r = %.0e in model %d", worst,
                      K * radius * radius, radius, k);
        fail.record(buf);
      }
    }
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// Near the collision curve, the discriminant is negative on the side where
// the transversal derivative says it must be: sign(delta above C) =
// -sign(L0 a01) inside a box where the linear term dominates.
inline PropertyResult prop_delta_side_rule(const VerifyOptions& opt) {
  PropertyResult r{.name = "delta_side_rule"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 5);
  for (int k = 0; k < opt.models; ++k) {
    NormalFormModel m = gen.model();
    ExactSeries d = verify_detail::full_delta_series(m);
    // d(delta)/d(alpha2): constant is -4 L0 a01; bound the rest by its
    // coefficient sum times h to pick a dominance box.
    ExactSeries dd;
    for (const auto& [ij, c] : d.terms())
      if (ij.second >= 1) dd.set(ij.first, ij.second - 1, c * ij.second);
    double lead = std::abs(4.0 * m.L0() * to_double(m.a(0, 1)));
    double rest = verify_detail::tail_coefficient_sum(dd, 1);
    double h = std::min(0.5 * m.epsilon(), lead / (2.0 * std::max(rest, 1e-9)));
    double c1 = std::abs(to_double(expand_b1(m).k[0]));
    double a1max = 0.25 * h / (1.0 + c1);
    std::vector<double> grid;
    for (int i = -6; i <= 6; ++i)
      if (i != 0) grid.push_back(a1max * i / 6.0);
    CurveTrace tr = trace_curve(m, CurveKind::C, grid);
    int expected_above = -sign_of(m.L0() * to_double(m.a(0, 1)));
    for (const ParameterPoint& p : tr.points) {
      for (double off : {0.25 * h, -0.25 * h, 0.01 * h, -0.01 * h}) {
        ParameterPoint q{p.alpha1, p.alpha2 + off};
        if (!(q.norm() < m.epsilon()) || std::abs(q.alpha2) > h) continue;
        double b1 = m.beta1_series().eval(q.alpha1, q.alpha2);
        double b2 = m.beta2_series().eval(q.alpha1, q.alpha2);
        double l2 = m.l2_series().eval(q.alpha1, q.alpha2);
        double delta = b2 * b2 - 4.0 * b1 * l2;
        int want = off > 0 ? expected_above : -expected_above;
        ++r.cases;
        if (sign_of(delta) != 0 && sign_of(delta) != want)
          fail.record("delta side rule broken for " + verify_detail::point_str(k, q));
      }
    }
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// The radial sequence never depends on phi0, and repeated runs are
// bit-identical.
inline PropertyResult prop_determinism(const VerifyOptions& opt) {
  PropertyResult r{.name = "determinism_and_decoupling"};
  verify_detail::Failure fail;
  ModelGenerator gen(opt.seed + 6);
  SimulationConfig cfg;
  cfg.max_steps = 3000;
  for (int k = 0; k < std::min(opt.models, 10); ++k) {
    NormalFormModel m = gen.model();
    ParameterPoint p = gen.point(m.epsilon());
    OrbitTrace t1, t2;
    try {
      t1 = iterate_orbit(m, p, 0.05, 0.0, cfg);
      t2 = iterate_orbit(m, p, 0.05, 2.5, cfg);
    } catch (const Error&) {
      continue;
    }
    ++r.cases;
    if (t1.states.size() != t2.states.size()) {
      fail.record("step counts differ with phi0 for " + verify_detail::point_str(k, p));
      continue;
    }
    for (size_t i = 0; i < t1.states.size(); ++i)
      if (t1.states[i].rho != t2.states[i].rho) {
        fail.record("radial sequence depends on phi0 for " +
                    verify_detail::point_str(k, p));
        break;
      }
    OrbitTrace t3 = iterate_orbit(m, p, 0.05, 0.0, cfg);
    ++r.cases;
    if (t3.states.size() != t1.states.size())
      fail.record("rerun not deterministic for " + verify_detail::point_str(k, p));
  }
  r.pass = !fail.any;
  r.detail = fail.detail;
  return r;
}

// The canonical diagram labeling covers exactly 32 distinct labels.
inline PropertyResult prop_diagram_labels() {
  PropertyResult r{.name = "diagram_label_count"};
  std::vector<int> labels = all_diagram_labels();
  std::vector<bool> seen(33, false);
  bool ok = labels.size() == 32;
  for (int l : labels) {
    if (l < 1 || l > 32 || seen[static_cast<size_t>(l)]) ok = false;
    else seen[static_cast<size_t>(l)] = true;
  }
  r.cases = labels.size();
  r.pass = ok;
  if (!ok) r.detail = "labels not a bijection onto 1..32";
  return r;
}

inline std::vector<PropertyResult> run_property_suite(const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  out.push_back(prop_expansion_identities(opt));
  out.push_back(prop_expansion_residuals(opt));
  out.push_back(prop_classifier_vs_bruteforce(opt));
  out.push_back(prop_monotonicity(opt));
  out.push_back(prop_delta_leading_term(opt));
  out.push_back(prop_delta_side_rule(opt));
  out.push_back(prop_determinism(opt));
  out.push_back(prop_diagram_labels());
  return out;
}

inline bool all_pass(const std::vector<PropertyResult>& rs) {
  for (const PropertyResult& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace chenciner
