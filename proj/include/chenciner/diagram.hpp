#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "chenciner/classifier.hpp"
#include "chenciner/curves.hpp"
#include "chenciner/errors.hpp"
#include "chenciner/simulator.hpp"

namespace chenciner {

// Case 1: L0 * a01 > 0, so m4 > c4 and delta < 0 on the upper side of C.
// Case 2: the mirror image.
enum class DiagramCaseKind { Case1, Case2 };

// Qualitative shape of the bifurcation diagram near the origin. The
// sub-configuration index is the canonical dedup of the published layouts:
// the pair (sign c2, tau) with tau = sign(b01 * (d2 - c2)) determines the
// curve layout through order 2, and excluding the degenerate pair (0, 0)
// leaves exactly 8 classes per (case, sign c1) branch, hence 32 labels.
struct DiagramCase {
  DiagramCaseKind case_kind = DiagramCaseKind::Case1;
  int c1_sign = 0;
  bool c1_zero = false;  // a10 = b10 = 0: curves tangent to the alpha1 axis
  int c2_sign = 0;
  int d2_sign = 0;
  int separation_sign = 0;  // sign(d2 - c2)
  int b01_sign = 0;
  int tau = 0;  // sign(b01 * (d2 - c2))
  bool gamma_zero = false;
  int subconfig = 0;  // 1..8, or 0 for the excluded pair (0, 0)
  int label = 0;      // 1..32, or 0 when subconfig is 0
  std::vector<std::string> warnings;
};

namespace detail {

inline int subconfig_index(int c2_sign, int tau) {
  static constexpr std::array<std::array<int, 3>, 3> table{{
      // tau:      -1  0  +1       c2_sign:
      {{8, 7, 6}},  // -1
      {{5, 0, 4}},  // 0
      {{3, 2, 1}},  // +1
  }};
  return table[static_cast<size_t>(c2_sign + 1)][static_cast<size_t>(tau + 1)];
}

inline int flat_label(DiagramCaseKind kind, int c1_sign, int subconfig) {
  if (subconfig == 0) return 0;
  return (kind == DiagramCaseKind::Case2 ? 16 : 0) + (c1_sign < 0 ? 8 : 0) + subconfig;
}

}  // namespace detail

// Determines the diagram case of a degenerate model from exact signs of the
// expansion coefficients. Zero values of d2, c4, m4 or gamma are reported
// as warnings, not errors.
inline DiagramCase enumerate_case(const NormalFormModel& m) {
  if (!m.is_degenerate())
    throw NotDegenerate("diagram case requires the degeneracy condition");
  CurveExpansion b1e = expand_b1(m);
  CurveExpansion b2e = expand_b2(m);
  CurveExpansion ce = expand_c(m);

  DiagramCase dc;
  Rational la = m.L0_exact() * m.a(0, 1);
  dc.case_kind = la > 0 ? DiagramCaseKind::Case1 : DiagramCaseKind::Case2;
  dc.c1_sign = sign_of(b1e.k[0]);
  dc.c1_zero = dc.c1_sign == 0;
  dc.c2_sign = sign_of(b1e.k[1]);
  dc.d2_sign = sign_of(b2e.k[1]);
  dc.separation_sign = sign_of(b2e.k[1] - b1e.k[1]);
  dc.b01_sign = sign_of(m.b(0, 1));
  dc.tau = dc.b01_sign * dc.separation_sign;
  dc.gamma_zero = ce.gamma == 0;
  dc.subconfig = detail::subconfig_index(dc.c2_sign, dc.tau);
  dc.label = detail::flat_label(dc.case_kind, dc.c1_sign, dc.subconfig);

  Rational c4 = b1e.k[3];
  Rational m4 = ce.k[3];
  if (dc.c1_zero)
    dc.warnings.push_back("c1 = 0: all three curves are tangent to the alpha1 axis");
  if (b2e.k[1] == 0) dc.warnings.push_back("d2 = 0: B2 is flat through second order");
  if (b1e.k[1] == 0) dc.warnings.push_back("c2 = 0: B1 and C are flat through second order");
  if (c4 == 0) dc.warnings.push_back("c4 = 0");
  if (m4 == 0) dc.warnings.push_back("m4 = 0");
  if (dc.gamma_zero)
    dc.warnings.push_back(
        "gamma = 0: B1 and C are indistinguishable through fourth order");
  if (dc.subconfig == 0)
    dc.warnings.push_back("c2 = 0 and b01*(d2 - c2) = 0: no canonical sub-configuration");
  return dc;
}

inline std::string case_label(const DiagramCase& dc) {
  return "D" + std::to_string(dc.label);
}

// All 32 admissible (case, sign c1, subconfig) combinations, for coverage
// checks of the labeling.
inline std::vector<int> all_diagram_labels() {
  std::vector<int> out;
  for (DiagramCaseKind kind : {DiagramCaseKind::Case1, DiagramCaseKind::Case2})
    for (int c1s : {+1, -1})
      for (int sub = 1; sub <= 8; ++sub)
        out.push_back(detail::flat_label(kind, c1s, sub));
  return out;
}

struct DiagramWindow {
  double a1_min = 0, a1_max = 0, a2_min = 0, a2_max = 0;
};

struct DiagramSpec {
  DiagramWindow window;
  int nx = 0, ny = 0;
  // Row-major from the bottom row: regions[j*nx + i], 0 = on a curve band
  // or unclassifiable.
  std::vector<int> regions;
  CurveTrace b1, b2, c;
  DiagramCase dcase;
  std::vector<std::string> diagnostics;

  double a1_at(int i) const {
    return window.a1_min + (i + 0.5) * (window.a1_max - window.a1_min) / nx;
  }
  double a2_at(int j) const {
    return window.a2_min + (j + 0.5) * (window.a2_max - window.a2_min) / ny;
  }
  int region_at(int i, int j) const { return regions[static_cast<size_t>(j) * nx + i]; }
};

namespace detail {

inline unsigned worker_count() {
  if (const char* env = std::getenv("CHENCINER_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace detail

// Classifies a resolution x resolution grid of cell centers and traces the
// three curves over the same column positions. Cells landing inside a zero
// band (on a curve) get region 0. The delta side rule for the current case
// is spot-checked on cells adjacent to the traced collision curve; any
// violation lands in diagnostics.
inline DiagramSpec build_diagram(const NormalFormModel& m, const DiagramWindow& w,
                                 int resolution) {
  if (resolution < 16)
    throw InvalidResolution("diagram resolution must be at least 16, got " +
                            std::to_string(resolution));
  if (!(w.a1_max > w.a1_min) || !(w.a2_max > w.a2_min))
    throw InvalidResolution("diagram window is empty");
  for (double a1 : {w.a1_min, w.a1_max})
    for (double a2 : {w.a2_min, w.a2_max})
      if (!(ParameterPoint{a1, a2}.norm() < m.epsilon()))
        throw OutOfValidityRadius("diagram window corner outside the validity disk");

  DiagramSpec d;
  d.window = w;
  d.nx = d.ny = resolution;
  d.regions.assign(static_cast<size_t>(resolution) * resolution, 0);
  d.dcase = enumerate_case(m);

  std::vector<double> grid(static_cast<size_t>(resolution));
  for (int i = 0; i < resolution; ++i) grid[static_cast<size_t>(i)] = d.a1_at(i);
  d.b1 = trace_curve(m, CurveKind::B1, grid);
  d.b2 = trace_curve(m, CurveKind::B2, grid);
  d.c = trace_curve(m, CurveKind::C, grid);

  auto classify_row = [&](int j) {
    for (int i = 0; i < resolution; ++i) {
      ParameterPoint p{d.a1_at(i), d.a2_at(j)};
      int region = 0;
      try {
        CircleInventory inv = classify(m, p);
        bool on_curve = inv.profile.delta == 0 || inv.profile.beta1 == 0 ||
                        inv.profile.beta2 == 0;
        region = on_curve ? 0 : inv.region;
      } catch (const Error&) {
        region = 0;
      }
      d.regions[static_cast<size_t>(j) * resolution + i] = region;
    }
  };

  unsigned workers = std::min<unsigned>(detail::worker_count(),
                                        static_cast<unsigned>(resolution));
  if (workers <= 1) {
    for (int j = 0; j < resolution; ++j) classify_row(j);
  } else {
    std::vector<std::future<void>> futs;
    for (unsigned t = 0; t < workers; ++t) {
      futs.push_back(std::async(std::launch::async, [&, t] {
        for (int j = static_cast<int>(t); j < resolution; j += static_cast<int>(workers))
          classify_row(j);
      }));
    }
    for (auto& f : futs) f.get();
  }

  // Delta-side spot check near the collision curve.
  int expected_above = d.dcase.case_kind == DiagramCaseKind::Case1 ? -1 : +1;
  double dy = (w.a2_max - w.a2_min) / resolution;
  size_t violations = 0;
  for (size_t k = 0; k < d.c.points.size(); ++k) {
    double a1 = d.c.points[k].alpha1;
    double a2c = d.c.points[k].alpha2;
    int i = static_cast<int>((a1 - w.a1_min) / (w.a1_max - w.a1_min) * resolution);
    if (i < 0 || i >= resolution) continue;
    for (int off : {-3, -2, 2, 3}) {
      double a2 = a2c + off * dy;
      ParameterPoint p{a1, a2};
      if (!(p.norm() < m.epsilon())) continue;
      ModelEvaluation ev;
      try {
        ev = m.evaluate(p);
      } catch (const Error&) {
        continue;
      }
      SignProfile s = sign_profile(ev, m.L0(), m.tolerances());
      if (s.delta == 0) continue;
      int expected = off > 0 ? expected_above : -expected_above;
      if (s.delta != expected && ++violations <= 8)
        d.diagnostics.push_back("delta side rule violated at (" + std::to_string(a1) +
                                ", " + std::to_string(a2) + ")");
    }
  }
  if (violations > 8)
    d.diagnostics.push_back("delta side rule: " + std::to_string(violations) +
                            " violations total");
  return d;
}

struct PhasePortraitSpec {
  ParameterPoint at;
  CircleInventory inventory;
  std::vector<double> starts;
  std::vector<OrbitTrace> orbits;
  double rho_max = 0.0;  // plot extent
};

// Orbit bundle for one parameter point: one start below the innermost
// circle, one between each adjacent pair, one beyond the outermost; just
// rho = 0.05 when there are no circles.
inline PhasePortraitSpec phase_portrait(const NormalFormModel& m, const ParameterPoint& p,
                                        const SimulationConfig& cfg) {
  PhasePortraitSpec spec;
  spec.at = p;
  spec.inventory = classify(m, p);

  const auto& circles = spec.inventory.circles;
  if (circles.empty()) {
    spec.starts = {0.05};
    spec.rho_max = 0.1;
  } else {
    spec.starts.push_back(0.3 * circles.front().radius);
    for (size_t i = 0; i + 1 < circles.size(); ++i)
      spec.starts.push_back(0.5 * (circles[i].radius + circles[i + 1].radius));
    spec.starts.push_back(1.2 * circles.back().radius);
    spec.rho_max = 1.4 * circles.back().radius;
  }

  for (double r0 : spec.starts) {
    SimulationConfig local = cfg;
    // Keep the outermost start alive long enough to show its behavior.
    local.escape_radius = std::max(cfg.escape_radius, 2.0 * r0);
    spec.orbits.push_back(iterate_orbit(m, p, r0, 0.0, local));
  }
  // Widen the frame to the observed extent, but never let one escaping
  // orbit blow up the scale.
  double seen = 0.0;
  for (const OrbitTrace& tr : spec.orbits)
    for (const OrbitState& st : tr.states) seen = std::max(seen, st.rho);
  spec.rho_max = std::min(std::max(spec.rho_max, 1.05 * seen), 2.5 * spec.rho_max);
  return spec;
}

}  // namespace chenciner
