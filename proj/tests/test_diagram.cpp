#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "chenciner/diagram.hpp"

using namespace chenciner;

namespace {

NormalFormModel make_ex1a(double epsilon = 0.1) {
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b1.set(0, 1, Rational(1));
  b1.set(2, 0, Rational(-1));
  b1.set(1, 1, Rational(-2));
  b1.set(0, 2, Rational(-1));
  b2.set(1, 0, Rational(2));
  b2.set(0, 1, Rational(2));
  b2.set(2, 0, Rational(1));
  l2.set(0, 0, Rational(-1));
  return NormalFormModel(b1, b2, l2, 0.1, epsilon);
}

// Minimal degenerate model with prescribed curve shape:
//   c1 = c1t, c2 = c2t, d2 = d2t, sign(b01) = sign(b01t), L0 = l0t.
// Uses a01 = 1, so the case split L0 a01 > 0 reduces to the sign of l0t.
NormalFormModel shaped_model(const Rational& c1t, const Rational& c2t,
                             const Rational& d2t, const Rational& b01t,
                             const Rational& l0t) {
  ExactSeries b1, b2, l2;
  b1.set(1, 0, -c1t);
  b1.set(0, 1, Rational(1));
  b1.set(2, 0, -c2t);
  b2.set(1, 0, -c1t * b01t);
  b2.set(0, 1, b01t);
  b2.set(2, 0, -d2t * b01t);
  l2.set(0, 0, l0t);
  return NormalFormModel(b1, b2, l2, 0.3, 0.1);
}

}  // namespace

TEST_CASE("worked model falls in the expected diagram class", "[diagram]") {
  DiagramCase dc = enumerate_case(make_ex1a());
  CHECK(dc.case_kind == DiagramCaseKind::Case2);  // L0 a01 = -1
  CHECK(dc.c1_sign == -1);
  CHECK_FALSE(dc.c1_zero);
  CHECK(dc.c2_sign == 0);
  CHECK(dc.d2_sign == -1);
  CHECK(dc.separation_sign == -1);
  CHECK(dc.b01_sign == 1);
  CHECK(dc.tau == -1);
  CHECK(dc.subconfig == 5);
  CHECK(dc.label == 29);
  CHECK(case_label(dc) == "D29");
  CHECK_FALSE(dc.gamma_zero);

  bool has_c2_warning = false;
  for (const auto& w : dc.warnings)
    if (w.find("c2 = 0") != std::string::npos) has_c2_warning = true;
  CHECK(has_c2_warning);
}

TEST_CASE("fully degenerate linear model collapses to class zero", "[diagram]") {
  // beta2 = 2 beta1 with no quadratic terms: c2 = d2 = 0 and gamma = 0, so
  // the three curves are indistinguishable through fourth order.
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b1.set(0, 1, Rational(1));
  b2.set(1, 0, Rational(2));
  b2.set(0, 1, Rational(2));
  l2.set(0, 0, Rational(-1));
  NormalFormModel m(b1, b2, l2, 0.1, 0.1);

  DiagramCase dc = enumerate_case(m);
  CHECK(dc.subconfig == 0);
  CHECK(dc.label == 0);
  CHECK(dc.gamma_zero);
  bool flagged = false;
  for (const auto& w : dc.warnings)
    if (w.find("gamma = 0") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("equivalent published sign conditions share one class", "[diagram]") {
  // Three different-looking inequality sets describe the same curve layout:
  // 0 < c2 < d2 with b01 > 0, 0 < d2 < c2 with b01 < 0, and d2 < 0 < c2
  // with b01 < 0. All must land in sub-configuration 1.
  DiagramCase a = enumerate_case(
      shaped_model(Rational(1), Rational(1), Rational(2), Rational(1), Rational(1)));
  DiagramCase b = enumerate_case(
      shaped_model(Rational(1), Rational(2), Rational(1), Rational(-1), Rational(1)));
  DiagramCase c = enumerate_case(
      shaped_model(Rational(1), Rational(1), Rational(-1), Rational(-1), Rational(1)));
  CHECK(a.subconfig == 1);
  CHECK(b.subconfig == 1);
  CHECK(c.subconfig == 1);
  CHECK(a.label == b.label);
  CHECK(b.label == c.label);
  CHECK(a.label == 1);
}

TEST_CASE("sign lattice realizes exactly 32 distinct classes", "[diagram]") {
  std::set<int> labels;
  for (int l0 : {1, -1}) {
    for (int c1 : {1, -1}) {
      // (sign c2, tau) combos excluding (0, 0); with b01 = 1 the separation
      // d2 - c2 carries tau directly.
      for (auto [c2s, tau] : std::vector<std::pair<int, int>>{
               {1, 1}, {1, 0}, {1, -1}, {0, 1}, {0, -1}, {-1, 1}, {-1, 0}, {-1, -1}}) {
        NormalFormModel m = shaped_model(Rational(c1), Rational(c2s),
                                         Rational(c2s + tau), Rational(1), Rational(l0));
        DiagramCase dc = enumerate_case(m);
        CHECK(dc.subconfig != 0);
        CHECK((dc.case_kind == DiagramCaseKind::Case1) == (l0 > 0));
        labels.insert(dc.label);
      }
    }
  }
  CHECK(labels.size() == 32);

  std::vector<int> expected = all_diagram_labels();
  std::vector<int> got(labels.begin(), labels.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
}

TEST_CASE("region grid around the curve crossing", "[diagram]") {
  NormalFormModel m = make_ex1a(0.8);
  DiagramWindow w{0.45, 0.55, -0.57, -0.47};
  DiagramSpec d = build_diagram(m, w, 24);

  REQUIRE(d.nx == 24);
  REQUIRE(d.ny == 24);
  REQUIRE(d.regions.size() == 24u * 24u);

  // Above the line a2 = -a1 the origin is unstable with a stable circle;
  // below the collision curve everything spirals in; between them sits the
  // two-circle pocket.
  int n3 = 0, n4 = 0, n7 = 0, other = 0;
  for (int v : d.regions) {
    if (v == 3) ++n3;
    else if (v == 4) ++n4;
    else if (v == 7) ++n7;
    else ++other;
  }
  CHECK(n3 > 100);
  CHECK(n4 > 100);
  CHECK(n7 >= 10);
  CHECK(other <= 40);  // thin bands on the curves themselves

  // Primary curve is the exact line a2 = -a1 here.
  REQUIRE(d.b1.failed_alpha1.empty());
  for (const auto& p : d.b1.points) CHECK(std::abs(p.alpha2 + p.alpha1) < 1e-10);

  // Collision curve: a2 = -a1 - a1^4 / (4 (1 + a1^2)) in closed form.
  REQUIRE(d.c.failed_alpha1.empty());
  for (const auto& p : d.c.points) {
    double a1 = p.alpha1;
    double expect = -a1 - std::pow(a1, 4) / (4.0 * (1.0 + a1 * a1));
    CHECK(std::abs(p.alpha2 - expect) < 1e-9);
  }

  // Case 2 model: the discriminant is positive above the collision curve,
  // so the side spot-check must come back clean.
  CHECK(d.dcase.label == 29);
  CHECK(d.diagnostics.empty());
}

TEST_CASE("diagram rebuild is bit-identical", "[diagram]") {
  NormalFormModel m = make_ex1a(0.8);
  DiagramWindow w{0.45, 0.55, -0.57, -0.47};
  DiagramSpec d1 = build_diagram(m, w, 24);
  DiagramSpec d2 = build_diagram(m, w, 24);
  CHECK(d1.regions == d2.regions);
  REQUIRE(d1.c.points.size() == d2.c.points.size());
  for (size_t i = 0; i < d1.c.points.size(); ++i) {
    CHECK(d1.c.points[i].alpha2 == d2.c.points[i].alpha2);
  }
}

TEST_CASE("diagram input guards", "[diagram]") {
  NormalFormModel m = make_ex1a();
  CHECK_THROWS_AS(build_diagram(m, DiagramWindow{-0.01, 0.01, -0.01, 0.01}, 8),
                  InvalidResolution);
  CHECK_THROWS_AS(build_diagram(m, DiagramWindow{0.01, -0.01, -0.01, 0.01}, 24),
                  InvalidResolution);
  // Window corner outside the validity disk.
  CHECK_THROWS_AS(build_diagram(m, DiagramWindow{-0.2, 0.2, -0.2, 0.2}, 24),
                  OutOfValidityRadius);
}

TEST_CASE("phase portrait seeds one orbit per basin", "[diagram]") {
  NormalFormModel m = make_ex1a(0.8);
  ParameterPoint p{0.5, -0.512};
  SimulationConfig cfg;
  PhasePortraitSpec spec = phase_portrait(m, p, cfg);

  REQUIRE(spec.inventory.region == 7);
  REQUIRE(spec.inventory.circles.size() == 2);
  double r1 = spec.inventory.circles[0].radius;
  double r2 = spec.inventory.circles[1].radius;
  REQUIRE(spec.starts.size() == 3);
  CHECK(spec.starts[0] == Catch::Approx(0.3 * r1));
  CHECK(spec.starts[1] == Catch::Approx(0.5 * (r1 + r2)));
  CHECK(spec.starts[2] == Catch::Approx(1.2 * r2));

  // Inside the repelling circle the origin wins; the other two starts
  // bracket the attracting circle.
  REQUIRE(spec.orbits.size() == 3);
  CHECK(spec.orbits[0].verdict == OrbitVerdict::ConvergedToOrigin);
  CHECK(spec.orbits[1].verdict == OrbitVerdict::ConvergedToCircle);
  CHECK(spec.orbits[2].verdict == OrbitVerdict::ConvergedToCircle);
  CHECK(spec.orbits[1].circle_radius == Catch::Approx(r2).margin(1e-4));
  CHECK(spec.orbits[2].circle_radius == Catch::Approx(r2).margin(1e-4));

  double seen = 0.0;
  for (const auto& tr : spec.orbits)
    for (const auto& st : tr.states) seen = std::max(seen, st.rho);
  CHECK(spec.rho_max >= 1.4 * r2 - 1e-12);
  CHECK(spec.rho_max >= 1.05 * seen - 1e-12);
}

TEST_CASE("phase portrait without circles uses a single probe", "[diagram]") {
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b1.set(0, 1, Rational(1));
  b2.set(1, 0, Rational(2));
  b2.set(0, 1, Rational(2));
  l2.set(0, 0, Rational(-1));
  NormalFormModel m(b1, b2, l2, 0.1, 0.1);

  PhasePortraitSpec spec = phase_portrait(m, ParameterPoint{-0.01, -0.01}, {});
  CHECK(spec.inventory.region == 4);
  REQUIRE(spec.starts.size() == 1);
  CHECK(spec.starts[0] == 0.05);
  REQUIRE(spec.orbits.size() == 1);
  CHECK(spec.orbits[0].verdict == OrbitVerdict::ConvergedToOrigin);
}
