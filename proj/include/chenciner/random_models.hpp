#pragma once

#include <random>

#include "chenciner/model.hpp"

namespace chenciner {

// Deterministic, seed-reproducible model generator. All draws go through
// the raw mt19937_64 stream with shift/modulo transforms only; the standard
// pins that stream exactly, so the same seed gives the same models on any
// platform (std::uniform_*_distribution would not guarantee that).
class ModelGenerator {
 public:
  struct Options {
    double epsilon = 0.1;
    int beta1_order = 4;
    int beta2_order = 3;
    int l2_order = 2;
    bool degenerate = true;  // enforce a10 b01 = a01 b10 exactly
  };

  explicit ModelGenerator(std::uint64_t seed) : ModelGenerator(seed, Options()) {}
  ModelGenerator(std::uint64_t seed, Options opt) : rng_(seed), opt_(opt) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  // Dyadic coefficient k/64 with k in [-128, 128]; exact as a rational.
  Rational dyadic() {
    auto k = static_cast<std::int64_t>(rng_() % 257) - 128;
    return Rational(k, 64);
  }

  Rational dyadic_away_from_zero() {
    for (;;) {
      Rational r = dyadic();
      if (abs(r) >= Rational(7, 64)) return r;  // |value| >= 0.109
    }
  }

  NormalFormModel model() {
    for (;;) {
      ExactSeries beta1, beta2, l2;
      for (int o = 1; o <= opt_.beta1_order; ++o)
        for (int i = 0; i <= o; ++i)
          if (rng_() % 4 != 0) beta1.set(i, o - i, dyadic());
      for (int o = 1; o <= opt_.beta2_order; ++o)
        for (int i = 0; i <= o; ++i)
          if (rng_() % 4 != 0) beta2.set(i, o - i, dyadic());
      for (int o = 1; o <= opt_.l2_order; ++o)
        for (int i = 0; i <= o; ++i)
          if (rng_() % 4 != 0) l2.set(i, o - i, dyadic());

      Rational a01 = dyadic_away_from_zero();
      Rational b01 = dyadic_away_from_zero();
      Rational L0 = dyadic_away_from_zero();
      beta1.set(0, 1, a01);
      beta2.set(0, 1, b01);
      l2.set(0, 0, L0);
      if (opt_.degenerate) {
        Rational b10 = beta1.coefficient(1, 0) * b01 / a01;
        if (abs(b10) > 2) continue;  // keep coefficients in the [-2, 2] box
        beta2.set(1, 0, b10);
      }

      static constexpr double thetas[] = {0.1, 0.3, 0.7, 1.1, 2.0};
      double theta0 = thetas[rng_() % 5];
      return NormalFormModel(beta1, beta2, l2, theta0, opt_.epsilon);
    }
  }

  // Uniform point in the square inscribed in the disk of radius
  // frac * epsilon (so always strictly inside the validity disk).
  ParameterPoint point(double epsilon, double frac = 0.9) {
    double half = frac * epsilon / std::numbers::sqrt2;
    return {(2.0 * uniform() - 1.0) * half, (2.0 * uniform() - 1.0) * half};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  Options opt_;
};

}  // namespace chenciner
