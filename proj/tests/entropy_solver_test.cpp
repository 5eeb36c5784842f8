#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "diqss/errors.hpp"
#include "diqss/keyrate/entropy.hpp"
#include "diqss/keyrate/eve_solver.hpp"

using namespace diqss::keyrate;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.3) == doctest::Approx(0.8812908992306927).epsilon(1e-14));
  CHECK(binary_entropy(0.09589472015608025) ==
        doctest::Approx(0.455845407326489).epsilon(1e-12));
  for (double x : {0.05, 0.2, 0.41}) {
    CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("g_base endpoints and fixture") {
  CHECK(g_base(1.0) == 1.0);
  CHECK(g_base(0.0) == 0.0);
  CHECK(g_base(0.7758562980412615) ==
        doctest::Approx(0.4938661701096966).epsilon(1e-12));
}

TEST_CASE("noise entropy, correlator interpretation") {
  // q = 0 reduces to g_base
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    CHECK(std::abs(noise_entropy(x, 0.0) - g_base(x)) < 1e-12);
  }
  // x = 1 gives 1 for every q
  for (double q : {0.0, 0.1, 0.25, 0.4, 0.5}) {
    CHECK(std::abs(noise_entropy(1.0, q) - 1.0) < 1e-12);
  }
  // x = 0 leaves only the preprocessing entropy
  for (double q : {0.0, 0.2, 0.45}) {
    CHECK(noise_entropy(0.0, q) == doctest::Approx(binary_entropy(q)).epsilon(1e-12));
  }
  CHECK(noise_entropy(0.0, 0.0) == 0.0);
  // non-decreasing in x for fixed q
  for (double q : {0.0, 0.1, 0.3, 0.49}) {
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const double v = noise_entropy(i / 50.0, q);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  CHECK_THROWS_AS(noise_entropy(1.5, 0.1), std::invalid_argument);
}

TEST_CASE("noise entropy, literal interpretation") {
  // matches the correlator form through the S -> sqrt(S^2/4 - 1) substitution
  for (double s : {2.0, 2.3, 2.6, 2.8284271247461903}) {
    const double corr = std::min(1.0, std::sqrt(s * s / 4.0 - 1.0));
    CHECK(noise_entropy(s, 0.0, Interpretation::kLiteral) ==
          doctest::Approx(g_base(corr)).epsilon(1e-12));
    CHECK(noise_entropy(s, 0.2, Interpretation::kLiteral) ==
          doctest::Approx(noise_entropy(corr, 0.2)).epsilon(1e-12));
  }
  CHECK(noise_entropy(2.8284271247461903, 0.37, Interpretation::kLiteral) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(noise_entropy(1.0, 0.1, Interpretation::kLiteral),
                  std::domain_error);
  CHECK_THROWS_WITH_AS(noise_entropy(0.8, 0.1, Interpretation::kLiteral),
                       doctest::Contains("literal"), std::domain_error);
}

namespace {

// Independent brute-force grid evaluation of the program (no refinement).
double grid_oracle(double S, double lambda, Sense sense, int res) {
  const double pi = 3.14159265358979323846;
  double best = sense == Sense::max ? -1e300 : 1e300;
  for (int it = 0; it <= res; ++it) {
    const double th = (pi / 2.0) * it / res;
    const double c = std::cos(th);
    const double s = std::sin(th);
    for (int ig = 0; ig <= res; ++ig) {
      const double g = -1.0 + 2.0 * ig / res;
      for (int ih = 0; ih <= res; ++ih) {
        const double h = -1.0 + 2.0 * ih / res;
        if (c * g + s * h < S / 2.0 - 1e-12) continue;
        for (int id = 0; id <= res; ++id) {
          const double d = -1.0 + 2.0 * id / res;
          if ((1.0 - g * g) * (1.0 - h * h) < g * g * h * h * d * d - 1e-12) continue;
          const double obj =
              s * s * g * g + c * c * h * h + 2.0 * (2.0 * lambda - 1.0) * s * c * g * h * d;
          best = sense == Sense::max ? std::max(best, obj) : std::min(best, obj);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("eve correlation bound: frozen optima (min sense)") {
  struct Case {
    double S, lambda, expected;
  };
  // Values computed with an independent SLSQP + dense-grid reference solver.
  const Case cases[] = {
      {2.8284271247461903, 0.5, 1.0},
      {2.0, 0.5, 0.0},
      {2.2, 0.5, 0.5527818322018628},
      {2.4, 0.5, 0.7572621683614786},
      {2.5313656355495473, 0.5, 0.8528267709172477},
      {2.7, 0.5, 0.9467491838192756},
      {2.4, 0.7, 0.7469690718495645},
      {2.4, 1.0, 0.6633249580710784},
      {2.5313656355495473, 1.0, 0.7758562980412604},
  };
  for (const auto& c : cases) {
    const auto r = eve_correlation_bound(c.S, c.lambda, Sense::min, 64);
    CHECK(r.e_tilde == doctest::Approx(c.expected).epsilon(1e-5));
    // optimizer satisfies the constraints within the stated slacks
    CHECK(r.point.c * r.point.g + r.point.s * r.point.h >= c.S / 2.0 - 1e-9);
    CHECK((1.0 - r.point.g * r.point.g) * (1.0 - r.point.h * r.point.h) >=
          std::pow(r.point.g * r.point.h * r.point.delta, 2) - 1e-9);
    CHECK(r.point.c * r.point.c + r.point.s * r.point.s ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.point.g) <= 1.0 + 1e-12);
    CHECK(std::abs(r.point.h) <= 1.0 + 1e-12);
    CHECK(std::abs(r.point.delta) <= 1.0 + 1e-12);
  }
}

TEST_CASE("eve correlation bound: printed max sense is the degenerate corner") {
  for (double S : {2.0, 2.4, 2.8284271247461903}) {
    for (double lambda : {0.5, 0.7, 1.0}) {
      const auto r = eve_correlation_bound(S, lambda, Sense::max, 32);
      CHECK(r.e_tilde == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  // default sense is the printed max
  CHECK(eve_correlation_bound(2.8284271247461903, 0.5).e_tilde ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("refined solutions dominate an independent grid oracle") {
  for (double S : {2.2, 2.5313656355495473}) {
    const double oracle_min = grid_oracle(S, 0.5, Sense::min, 60);
    const auto refined = eve_correlation_bound(S, 0.5, Sense::min, 48);
    CHECK(refined.point.objective <= oracle_min + 1e-6);
    const double oracle_max = grid_oracle(S, 0.5, Sense::max, 60);
    const auto refined_max = eve_correlation_bound(S, 0.5, Sense::max, 48);
    CHECK(refined_max.point.objective >= oracle_max - 1e-6);
  }
}

TEST_CASE("objective is invariant under delta sign flip at lambda = 1/2") {
  auto objective = [](double s, double c, double g, double h, double d) {
    return s * s * g * g + c * c * h * h + 2.0 * (2.0 * 0.5 - 1.0) * s * c * g * h * d;
  };
  for (double d : {-0.7, -0.2, 0.3, 0.9}) {
    CHECK(objective(0.6, 0.8, 0.9, 0.5, d) == objective(0.6, 0.8, 0.9, 0.5, -d));
  }
  // and the solved bound at lambda = 1/2 is insensitive to the delta axis
  const auto a = eve_correlation_bound(2.4, 0.5, Sense::min, 32);
  const auto b = eve_correlation_bound(2.4, 0.5, Sense::min, 33);
  CHECK(a.e_tilde == doctest::Approx(b.e_tilde).epsilon(1e-6));
}

TEST_CASE("lambda = 1 reduction diagnostic: E_tilde = sqrt(S^2/4 - 1)") {
  for (double S : {2.1, 2.4, 2.7}) {
    const auto r = eve_correlation_bound(S, 1.0, Sense::min, 64);
    CHECK(r.e_tilde == doctest::Approx(std::sqrt(S * S / 4.0 - 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(eve_correlation_bound(2.4, 0.5, Sense::min, 7),
                  std::invalid_argument);
  CHECK_THROWS_AS(eve_correlation_bound(1.9, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(eve_correlation_bound(2.9, 0.5), std::domain_error);
  CHECK_THROWS_AS(eve_correlation_bound(2.4, 1.5), std::invalid_argument);
}
