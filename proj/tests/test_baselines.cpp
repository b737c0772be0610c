#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "core/baselines.hpp"
#include "core/decoders.hpp"
#include "oracles.hpp"

using namespace gre;

TEST_CASE("pcm examples") {
  const Encoding e = pcm_encode(0.75, 4);
  CHECK(e.bits.bits == std::vector<Bit>{0, 1, 1, 0});
  for (double tau : {1e-9, 0.5, 1.0, 1.7}) {
    for (Bit b : pcm_encode(0.0, 30, tau).bits.bits) CHECK(b == 0);
  }
  CHECK_THROWS_AS(pcm_encode(2.01, 4), std::out_of_range);
  CHECK_THROWS_AS(pcm_encode(-0.01, 4), std::out_of_range);
}

TEST_CASE("pcm matches the exact-rational oracle") {
  oracle::Gen g(51);
  for (int trial = 0; trial < 300; ++trial) {
    const double x = 2.0 * g.dyadic(30);
    const Encoding e = pcm_encode(x, 40);
    const auto ref = oracle::beta_expansion(
        oracle::Rational(static_cast<long long>(std::ldexp(x, 30)), 1LL << 30), 40, 2);
    for (std::size_t n = 0; n < 40; ++n) REQUIRE(e.bits[n] == ref.bits[n]);
  }
}

TEST_CASE("pcm with an offset threshold is not robust") {
  double worst = 0.0;
  for (double x : uniform_grid(0.0, 2.0, 2001)) {
    const Encoding e = pcm_encode(x, 20, 1.05);
    worst = std::max(worst, std::abs(x - decode_partial_sum(e.bits, 2.0)));
  }
  CHECK(worst > 0.01);
}

TEST_CASE("property: a threshold offset of 0.05 leaves a non-decaying error") {
  // Witness search over a grid; the error must stay above 2^-5 for every N.
  bool found = false;
  for (double x : uniform_grid(0.0, 2.0, 4001)) {
    const Encoding e = pcm_encode(x, 60, 1.05);
    const auto partial = partial_sum_sequence(e.bits.bits, 2.0);
    bool persistent = true;
    for (std::size_t n = 10; n <= 60 && persistent; ++n) {
      persistent = std::abs(x - partial[n - 1]) > std::ldexp(1.0, -5);
    }
    if (persistent) {
      found = true;
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("beta spec validation") {
  CHECK_THROWS_AS(BetaSpec::greedy(1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(BetaSpec::greedy(2.5).validate(), std::invalid_argument);
  CHECK_NOTHROW(BetaSpec::lazy(1.8).validate());
  CHECK_THROWS_AS((BetaSpec{1.8, 0.9, 1.0, AlwaysZero{}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BetaSpec{1.8, 1.0, 1.3, AlwaysZero{}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(beta_encode(2.3, 4, BetaSpec::greedy(1.8)), std::out_of_range);
}

TEST_CASE("beta = 2, tau = 1 reproduces pcm") {
  for (double x : uniform_grid(0.0, 2.0, 100)) {
    CHECK(beta_encode(x, 40, BetaSpec::greedy(2.0)).bits.bits == pcm_encode(x, 40).bits.bits);
  }
}

TEST_CASE("flaky beta encoder stays accurate") {
  const double beta = 1.8;
  const BetaSpec spec{beta, 1.0, 1.0 / (beta - 1.0), RandomUniformThreshold{17}};
  const Encoding e = beta_encode(0.3, 40, spec);
  CHECK(std::abs(0.3 - decode_partial_sum(e.bits, beta)) <= beta / (beta - 1) * std::pow(beta, -40.0));
}

TEST_CASE("decoding with a mismatched base fails by an amount of order delta") {
  const double beta = 1.8, delta = 0.01;
  const Encoding e = beta_encode(0.5, 40, BetaSpec::greedy(beta));
  REQUIRE((e.bits[1] == 1 || e.bits[2] == 1));
  CHECK(std::abs(0.5 - decode_partial_sum(e.bits, beta + delta)) > 0.1 * delta);
}

TEST_CASE("property: beta inversion |x - sum b beta^-n| <= beta/(beta-1) beta^-N") {
  oracle::Gen g(52);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = g.uniform(1.1, 2.0);
    const double lazy = 1.0 / (beta - 1.0);
    const double a = g.uniform(1.0, lazy), b = g.uniform(1.0, lazy);
    Resolver r;
    switch (trial % 3) {
      case 0: r = AlwaysZero{}; break;
      case 1: r = AlwaysOne{}; break;
      default: r = RandomUniformThreshold{g.u64()}; break;
    }
    const BetaSpec spec{beta, std::min(a, b), std::max(a, b), r};
    const double x = g.uniform(0.0, beta / (beta - 1.0));
    const std::size_t n = g.index(1, 60);
    const Encoding e = beta_encode(x, n, spec);
    const double bound = beta / (beta - 1.0) * std::pow(beta, -double(n));
    CHECK(std::abs(x - decode_partial_sum(e.bits, beta)) <= bound * (1 + 1e-9) + 1e-15);
    for (double u : e.trajectory.scalars()) {
      CHECK(u >= -1e-12);
      CHECK(u <= beta / (beta - 1.0) + 1e-12);
    }
  }
}

TEST_CASE("sd1 examples") {
  for (Bit b : sd1_encode(1.0, 50).bits.bits) CHECK(b == 1);
  const Encoding half = sd1_encode(0.5, 10);
  CHECK(half.bits.bits == std::vector<Bit>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
  CHECK_THROWS_AS(sd1_encode(1.2, 5), std::out_of_range);
  CHECK_THROWS_AS(sd1_encode(0.2, 5, 1.5), std::out_of_range);
}

TEST_CASE("sd1_decode") {
  BitStream ones;
  ones.bits.assign(40, 1);
  CHECK(sd1_decode(ones) == 1.0);
  BitStream alt;
  for (int i = 0; i < 100; ++i) alt.bits.push_back(i % 2);
  CHECK(sd1_decode(alt) == 0.5);
  CHECK(std::abs(sd1_decode(sd1_encode(0.3, 1000).bits) - 0.3) <= 1e-3 + 1e-12);
  CHECK_THROWS_AS(sd1_decode(BitStream{}), std::invalid_argument);
}

TEST_CASE("property: sd1 states confined and running mean within 1/N") {
  oracle::Gen g(53);
  for (int trial = 0; trial < 500; ++trial) {
    const double x = g.uniform(0.0, 1.0);
    const std::size_t n = g.index(1, 500);
    const Encoding e = sd1_encode(x, n, g.uniform(0.0, 1.0));
    for (double u : e.trajectory.scalars()) {
      CHECK(u >= 0.0);
      CHECK(u <= 1.0);
    }
    CHECK(std::abs(x - sd1_decode(e.bits)) <= 1.0 / double(n) + 1e-12);
  }
}

TEST_CASE("companion coefficients") {
  CHECK(companion_coefficients(1) == std::vector<double>{1});
  CHECK(companion_coefficients(2) == std::vector<double>{-1, 2});
  CHECK(companion_coefficients(3) == std::vector<double>{1, -3, 3});
  CHECK(companion_coefficients(4) == std::vector<double>{-1, 4, -6, 4});
}

TEST_CASE("sdk with k = 1 and the greedy rule reproduces sd1") {
  SigmaDeltaKSpec spec{1, [](double x, std::span<const double> u) { return q_tau(u[0] + x, 1.0); }, {}};
  for (double x : uniform_grid(0.0, 1.0, 101)) {
    const Encoding a = sdk_encode(x, 200, spec);
    const Encoding b = sd1_encode(x, 200);
    CHECK(a.bits.bits == b.bits.bits);
    CHECK(a.trajectory.scalars() == b.trajectory.scalars());
  }
}

TEST_CASE("sdk k = 2 update is the second difference") {
  SigmaDeltaKSpec spec{2, [](double x, std::span<const double> u) { return q_tau(x + 2 * u[1] - u[0], 1.0); }, {}};
  oracle::Gen g(54);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> state{g.uniform(-1, 1), g.uniform(-1, 1)};
    const double x = g.uniform(0, 1);
    const SdkStep s = sdk_step(state, x, spec);
    CHECK(s.next[0] == state[1]);
    // (u_{n+2} - 2 u_{n+1} + u_n) = x - b_n
    CHECK(s.next[1] - 2 * state[1] + state[0] == doctest::Approx(x - s.bit).epsilon(1e-12).scale(1.0));
  }
  CHECK_THROWS_AS(sdk_step(std::vector<double>{0.0}, 0.5, spec), std::invalid_argument);
  CHECK_THROWS_AS(sdk_encode(0.5, 5, SigmaDeltaKSpec{2, nullptr, {}}), std::invalid_argument);
}

TEST_CASE("sdk zero input with a rule mapping 0 to 0 stays at zero") {
  for (std::size_t k = 1; k <= 5; ++k) {
    SigmaDeltaKSpec spec{k, [](double x, std::span<const double> u) { return q_tau(x + u.back(), 0.5); }, {}};
    const Encoding e = sdk_encode(0.0, 50, spec);
    for (double u : e.trajectory.scalars()) CHECK(u == 0.0);
  }
}
