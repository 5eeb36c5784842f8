#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "diqss/quantum/correlations.hpp"
#include "diqss/quantum/ghz.hpp"
#include "diqss/quantum/state.hpp"

using namespace diqss::quantum;

namespace {

constexpr double kSqrt2Inv = 0.70710678118654752440;

PureState phase_flip_qubit0(const PureState& psi) {
  auto amps = psi.amplitudes();
  const int half = psi.dim() / 2;
  for (int i = half; i < psi.dim(); ++i) amps[i] = -amps[i];
  return PureState(psi.num_qubits(), std::move(amps));
}

}  // namespace

TEST_CASE("ghz_state amplitudes match the basis convention") {
  const auto g1p = ghz_state({1, +1});
  CHECK(g1p.amplitude(0).real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
  CHECK(g1p.amplitude(7).real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
  for (int i = 1; i < 7; ++i) CHECK(std::abs(g1p.amplitude(i)) == 0.0);

  // (4,-): +1/sqrt2 at |HVV> (index 3), -1/sqrt2 at |VHH> (index 4)
  const auto g4m = ghz_state({4, -1});
  CHECK(g4m.amplitude(3).real() == doctest::Approx(kSqrt2Inv).epsilon(1e-14));
  CHECK(g4m.amplitude(4).real() == doctest::Approx(-kSqrt2Inv).epsilon(1e-14));
}

TEST_CASE("ghz basis is orthonormal") {
  const auto labels = all_ghz_labels();
  for (const auto& a : labels) {
    for (const auto& b : labels) {
      const double expected = (a == b) ? 1.0 : 0.0;
      const auto ip = ghz_state(a).inner(ghz_state(b));
      CHECK(std::abs(ip - Complex{expected, 0.0}) < 1e-12);
    }
  }
}

TEST_CASE("ghz_state rejects invalid labels") {
  CHECK_THROWS_AS(ghz_state({0, +1}), std::invalid_argument);
  CHECK_THROWS_AS(ghz_state({5, +1}), std::invalid_argument);
  CHECK_THROWS_AS(ghz_state({2, 0}), std::invalid_argument);
}

TEST_CASE("separation probability oracle equals the closed form exactly") {
  CHECK(separation_probability_oracle(0.5, 1.0) == 0.5);
  CHECK(separation_probability_oracle(0.0, 0.9) == 0.0);
  CHECK(separation_probability_oracle(0.5, 0.0609) == 2.0 * 0.0609 * 0.5 * (1.0 - 0.5));
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double t = i / 20.0;
      const double eta = j / 20.0;
      CHECK(separation_probability_oracle(t, eta) == 2.0 * eta * (t * (1.0 - t)));
    }
  }
  CHECK_THROWS_AS(separation_probability_oracle(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(separation_probability_oracle(0.5, 1.2), std::invalid_argument);
}

TEST_CASE("entanglement swap reproduces the collapse expansion") {
  const auto input = loaded_pairs_state();
  const auto outcomes = entanglement_swap(input, {3, 4, 5});
  REQUIRE(outcomes.size() == 8);

  double total = 0.0;
  double gsm_success = 0.0;
  for (const auto& o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.125).epsilon(1e-12));
    total += o.probability;
    CHECK(o.retained.fidelity(ghz_state(o.label)) == doctest::Approx(1.0).epsilon(1e-12));
    if (gsm_classify(o.label) == GsmResult::success) gsm_success += o.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gsm_success == doctest::Approx(0.25).epsilon(1e-12));

  // The (1,-) branch converts to (1,+) under a phase flip on qubit 0.
  for (const auto& o : outcomes) {
    if (o.label == GhzLabel{1, -1}) {
      CHECK(phase_flip_qubit0(o.retained).fidelity(ghz_state({1, +1})) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("entanglement swap sign pattern matches the expansion") {
  // Retained amplitude carries + for the (i,+) outcomes and - for the (i,-)
  // outcomes; fidelity is sign-blind so check the inner product directly.
  const auto input = loaded_pairs_state();
  for (const auto& o : entanglement_swap(input, {3, 4, 5})) {
    // Re-project without normalization to recover the amplitude sign.
    const auto g = ghz_state(o.label);
    const double overlap = g.inner(o.retained).real();
    if (o.label.sign > 0) {
      CHECK(overlap > 0.999999);
    } else {
      CHECK(overlap < -0.999999);
    }
  }
}

TEST_CASE("entanglement swap accepts permuted measured positions") {
  const auto input = loaded_pairs_state();
  const auto outcomes = entanglement_swap(input, {0, 1, 2});
  REQUIRE(outcomes.size() == 8);
  for (const auto& o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(o.retained.fidelity(ghz_state(o.label)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("entanglement swap input validation") {
  std::vector<Complex> amps(64, Complex{0.0, 0.0});
  amps[0] = Complex{2.0, 0.0};  // not normalized
  CHECK_THROWS_AS(PureState(6, amps), std::invalid_argument);

  const auto input = loaded_pairs_state();
  CHECK_THROWS_AS(entanglement_swap(input, {3, 3, 5}), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_swap(input, {3, 4, 6}), std::invalid_argument);
  const auto small = ghz_state({1, +1});
  CHECK_THROWS_AS(entanglement_swap(small, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("gsm_classify distinguishes only the first GHZ pair") {
  CHECK(gsm_classify({1, +1}) == GsmResult::success);
  CHECK(gsm_classify({1, -1}) == GsmResult::success);
  CHECK(gsm_classify({2, +1}) == GsmResult::failure);
  CHECK(gsm_classify({3, -1}) == GsmResult::failure);
  CHECK(gsm_classify({4, +1}) == GsmResult::failure);
}

TEST_CASE("white noise state spectrum") {
  const auto pure = white_noise_state(1.0);
  const auto proj = DensityOperator::from_pure(ghz_state({1, +1}));
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      CHECK(std::abs(pure.at(r, c) - proj.at(r, c)) < 1e-12);
    }
  }

  const auto mixed = white_noise_state(0.0);
  for (double ev : mixed.eigenvalues()) {
    CHECK(ev == doctest::Approx(0.125).epsilon(1e-12));
  }

  const auto evs = white_noise_state(0.98).eigenvalues();  // ascending
  for (int i = 0; i < 7; ++i) {
    CHECK(evs[i] == doctest::Approx(0.02 / 8.0).epsilon(1e-10));
  }
  CHECK(evs[7] == doctest::Approx(0.98 + 0.02 / 8.0).epsilon(1e-12));
}

TEST_CASE("density operators are validated on construction") {
  for (double f : {0.0, 0.25, 0.5, 0.8154, 0.98, 1.0}) {
    const auto rho = white_noise_state(f);  // would throw if invalid
    for (double ev : rho.eigenvalues()) CHECK(ev >= -1e-10);
  }
  // Non-Hermitian input is rejected.
  std::vector<Complex> bad(4, Complex{0.0, 0.0});
  bad[0] = Complex{0.5, 0.0};
  bad[1] = Complex{0.5, 0.0};
  bad[3] = Complex{0.5, 0.0};
  CHECK_THROWS_AS(DensityOperator(1, bad), std::invalid_argument);
}

TEST_CASE("correlation values") {
  const auto& a1 = Observable::named(ObservableName::A1);
  const auto& b1 = Observable::named(ObservableName::B1);
  const auto& c1 = Observable::named(ObservableName::C1);

  CHECK(correlation(white_noise_state(1.0), a1, b1, c1, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto mixed = white_noise_state(0.0);
  for (auto an : {ObservableName::A1, ObservableName::A2}) {
    for (auto bn : {ObservableName::B1, ObservableName::B2, ObservableName::B3}) {
      for (auto cn : {ObservableName::C1, ObservableName::C2}) {
        CHECK(std::abs(correlation(mixed, Observable::named(an), Observable::named(bn),
                                   Observable::named(cn), 1.0)) < 1e-12);
      }
    }
  }

  for (double f : {0.2, 0.6, 0.98}) {
    for (double eta : {0.5, 0.9, 1.0}) {
      CHECK(correlation(white_noise_state(f), a1, b1, c1, eta) ==
            doctest::Approx(f * eta * eta * eta).epsilon(1e-12));
    }
  }

  Observable bad{ObservableName::A1,
                 {Complex{0.5, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
                  Complex{-0.5, 0.0}}};
  CHECK_THROWS_AS(correlation(white_noise_state(1.0), bad, b1, c1, 1.0),
                  std::invalid_argument);
}

TEST_CASE("observable table is +/-1 valued") {
  for (auto n : {ObservableName::A1, ObservableName::A2, ObservableName::B1,
                 ObservableName::B2, ObservableName::B3, ObservableName::C1,
                 ObservableName::C2}) {
    CHECK_NOTHROW(Observable::named(n).validate());
  }
}

TEST_CASE("chsh value matches 2 sqrt(2) F eta^3") {
  const double two_sqrt2 = 2.0 * std::sqrt(2.0);
  CHECK(chsh_value(white_noise_state(1.0), 1.0) ==
        doctest::Approx(two_sqrt2).epsilon(1e-12));
  CHECK(chsh_value(white_noise_state(0.98), 0.9702) ==
        doctest::Approx(2.5313656355495473).epsilon(1e-12));
  CHECK(std::abs(chsh_value(white_noise_state(0.0), 0.7)) < 1e-12);

  for (int i = 0; i <= 9; ++i) {
    for (int j = 0; j <= 9; ++j) {
      const double f = i / 9.0;
      const double eta = j / 9.0;
      const double expected = two_sqrt2 * f * eta * eta * eta;
      CHECK(std::abs(chsh_value(white_noise_state(f), eta) - expected) < 1e-10);
    }
  }
}

TEST_CASE("svetlichny equals twice the chsh value") {
  CHECK(svetlichny_value(white_noise_state(1.0), 1.0) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(svetlichny_value(white_noise_state(0.98), 0.9702) ==
        doctest::Approx(5.062731271099095).epsilon(1e-12));
  for (int i = 0; i <= 9; ++i) {
    for (int j = 0; j <= 9; ++j) {
      const double f = i / 9.0;
      const double eta = j / 9.0;
      const auto rho = white_noise_state(f);
      CHECK(std::abs(svetlichny_value(rho, eta) - 2.0 * chsh_value(rho, eta)) < 1e-10);
    }
  }
}

TEST_CASE("qber closed forms") {
  CHECK(qber({1.0, 1.0}, Strategy::base) == 0.0);
  CHECK(qber({1.0, 1.0}, Strategy::postselect) == 0.0);
  CHECK(qber({0.3, 0.6}, Strategy::advanced, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

  const NoiseParams anchor{0.98, 0.9702};
  CHECK(qber(anchor, Strategy::base) ==
        doctest::Approx(0.09589472015608025).epsilon(1e-12));
  CHECK(qber(anchor, Strategy::postselect) ==
        doctest::Approx(0.0525135483600801).epsilon(1e-12));
  CHECK(qber(anchor, Strategy::advanced, 0.2) ==
        doctest::Approx(0.23150812901604806).epsilon(1e-12));

  // base - postselect = (1 - eta^3) / 2, and advanced at q = 0 equals
  // postselect exactly.
  for (double f : {0.1, 0.5, 0.9}) {
    for (double eta : {0.3, 0.8, 1.0}) {
      const NoiseParams n{f, eta};
      const double eta3 = eta * eta * eta;
      CHECK(qber(n, Strategy::base) - qber(n, Strategy::postselect) ==
            doctest::Approx((1.0 - eta3) / 2.0).epsilon(1e-12));
      CHECK(qber(n, Strategy::advanced, 0.0) == qber(n, Strategy::postselect));
      // linear in q
      const double d0 = qber(n, Strategy::advanced, 0.0);
      const double d2 = qber(n, Strategy::advanced, 0.2);
      const double d4 = qber(n, Strategy::advanced, 0.4);
      CHECK(d4 - d2 == doctest::Approx(d2 - d0).epsilon(1e-9));
    }
  }

  CHECK_THROWS_AS(qber({1.0, 1.0}, Strategy::base, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(qber({1.0, 1.0}, Strategy::postselect, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qber({1.0, 1.0}, Strategy::advanced), std::invalid_argument);
}
