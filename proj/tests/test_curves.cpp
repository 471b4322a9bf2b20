#include <catch2/catch_amalgamated.hpp>

#include "chenciner/curves.hpp"
#include "chenciner/random_models.hpp"

using namespace chenciner;

namespace {

// beta1 = (a1+a2) - (a1+a2)^2, beta2 = 2(a1+a2) + a1^2, L2 = -1.
// All three curves are known in closed form for this model.
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

// Mirror flavor: beta1 = a1+a2, beta2 = a1+a2+a1^2, L2 = +1.
NormalFormModel make_mirror() {
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b1.set(0, 1, Rational(1));
  b2.set(1, 0, Rational(1));
  b2.set(0, 1, Rational(1));
  b2.set(2, 0, Rational(1));
  l2.set(0, 0, Rational(1));
  return NormalFormModel(b1, b2, l2, 0.1, 0.1);
}

}  // namespace

TEST_CASE("closed-form expansions for the worked model", "[curves]") {
  NormalFormModel m = make_ex1a();
  CurveExpansion b1 = expand_b1(m);
  CHECK(b1.k[0] == Rational(-1));
  CHECK(b1.k[1] == Rational(0));
  CHECK(b1.k[2] == Rational(0));
  CHECK(b1.k[3] == Rational(0));

  CurveExpansion b2 = expand_b2(m);
  CHECK(b2.k[0] == Rational(-1));
  CHECK(b2.k[1] == Rational(-1, 2));
  CHECK(b2.k[2] == Rational(0));
  CHECK(b2.k[3] == Rational(0));

  CurveExpansion c = expand_c(m);
  CHECK(c.gamma == Rational(1));
  CHECK(c.k[0] == Rational(-1));
  CHECK(c.k[1] == Rational(0));
  CHECK(c.k[2] == Rational(0));
  CHECK(c.k[3] == Rational(-1, 4));
  // Fourth-order gap: gamma^2 / (4 L0 a01) = 1 / (4 * (-1) * 1).
  CHECK(c.k[3] - b1.k[3] == Rational(-1, 4));
}

TEST_CASE("mirror model flips the fourth-order gap sign", "[curves]") {
  NormalFormModel m = make_mirror();
  CurveExpansion b1 = expand_b1(m);
  CurveExpansion c = expand_c(m);
  CHECK(b1.k[0] == Rational(-1));
  CHECK(c.gamma == Rational(1));
  CHECK(c.k[3] - b1.k[3] == Rational(1, 4));
}

TEST_CASE("recurrence route equals closed forms exactly", "[curves]") {
  // The generic order-by-order solver and the closed-form coefficients are
  // independent derivations; on random models they must agree rationally.
  ModelGenerator gen(311);
  for (int k = 0; k < 25; ++k) {
    NormalFormModel m = gen.model();
    CurveExpansion closed = expand_b1(m);
    std::array<Rational, 4> rec = ift_expand_quartic(m.beta1_exact());
    for (int i = 0; i < 4; ++i) {
      INFO("model " << k << " coefficient " << i + 1);
      CHECK(closed.k[static_cast<size_t>(i)] == rec[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("implicit function theorem hypotheses are enforced", "[curves]") {
  ExactSeries no_branch;
  no_branch.set(0, 0, Rational(1));
  no_branch.set(0, 1, Rational(1));
  CHECK_THROWS_AS(ift_expand_quartic(no_branch), IftViolation);

  ExactSeries no_linear;
  no_linear.set(1, 0, Rational(1));
  no_linear.set(0, 2, Rational(1));
  CHECK_THROWS_AS(ift_expand_quartic(no_linear), IftViolation);

  // a01 = 0 blocks the B1 expansion.
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b2.set(0, 1, Rational(1));
  l2.set(0, 0, Rational(-1));
  NormalFormModel m(b1, b2, l2, 0.1, 0.1);
  CHECK_THROWS_AS(expand_b1(m), IftViolation);
}

TEST_CASE("degeneracy is required for B2 and C expansions", "[curves]") {
  ExactSeries b1, b2, l2;
  b1.set(1, 0, Rational(1));
  b1.set(0, 1, Rational(1));
  b2.set(1, 0, Rational(1));
  b2.set(0, 1, Rational(2));  // a10 b01 - a01 b10 = 1 != 0
  l2.set(0, 0, Rational(-1));
  NormalFormModel m(b1, b2, l2, 0.1, 0.1);
  CHECK_THROWS_AS(expand_b2(m), NotDegenerate);
  CHECK_THROWS_AS(expand_c(m), NotDegenerate);
  CHECK_NOTHROW(expand_b1(m));
}

TEST_CASE("traced collision curve hits the exact closed form", "[curves]") {
  NormalFormModel m = make_ex1a();
  CurveTrace tr = trace_curve(m, CurveKind::C, {0.05, 0.02, -0.05});
  REQUIRE(tr.points.size() == 3);
  // Exact curve: alpha2 = -alpha1 - alpha1^4 / (4 (1 + alpha1^2)).
  CHECK(tr.points[0].alpha2 == Catch::Approx(-0.050001558603491272).epsilon(1e-11));
  for (const ParameterPoint& p : tr.points) {
    double exact = -p.alpha1 -
                   std::pow(p.alpha1, 4) / (4.0 * (1.0 + p.alpha1 * p.alpha1));
    CHECK(p.alpha2 == Catch::Approx(exact).margin(1e-11));
  }
  for (double r : tr.residuals) CHECK(r <= m.tolerances().trace_tol);
}

TEST_CASE("traced primary curve is the exact line", "[curves]") {
  NormalFormModel m = make_ex1a();
  std::vector<double> grid;
  for (int i = -5; i <= 5; ++i) grid.push_back(0.04 * i / 5.0);
  CurveTrace tr = trace_curve(m, CurveKind::B1, grid);
  REQUIRE(tr.points.size() == grid.size());
  for (const ParameterPoint& p : tr.points)
    CHECK(p.alpha2 == Catch::Approx(-p.alpha1).margin(1e-11));
}

TEST_CASE("roots escaping the validity disk are per-point failures", "[curves]") {
  NormalFormModel m = make_ex1a();
  // At alpha1 = 0.08 the root alpha2 = -0.08 has norm 0.113 > epsilon.
  CurveTrace tr = trace_curve(m, CurveKind::B1, {0.01, 0.08});
  CHECK(tr.points.size() == 1);
  REQUIRE(tr.failed_alpha1.size() == 1);
  CHECK(tr.failed_alpha1[0] == 0.08);
  // A grid alpha1 at or beyond epsilon is rejected outright.
  CHECK_THROWS_AS(trace_curve(m, CurveKind::B1, {0.1}), OutOfValidityRadius);
}

TEST_CASE("verification accepts faithful traces", "[curves]") {
  NormalFormModel m = make_ex1a();
  std::vector<double> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(0.05 * i / 10.0);
  for (CurveKind kind : {CurveKind::B1, CurveKind::B2, CurveKind::C}) {
    CurveTrace tr = trace_curve(m, kind, grid);
    VerificationReport rep = verify_expansion(m, kind, tr);
    INFO(curve_name(kind) << ": residual " << rep.max_residual << " bound " << rep.bound);
    CHECK(rep.pass);
  }
}

TEST_CASE("verification rejects a corrupted trace", "[curves]") {
  NormalFormModel m = make_ex1a();
  std::vector<double> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(0.05 * i / 10.0);
  CurveTrace tr = trace_curve(m, CurveKind::C, grid);
  REQUIRE(!tr.points.empty());
  tr.points[2].alpha2 += 1e-4;
  CHECK_FALSE(verify_expansion(m, CurveKind::C, tr).pass);
}
