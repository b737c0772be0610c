#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"
#include "core/decoders.hpp"
#include "core/encoder_run.hpp"
#include "core/serialization.hpp"
#include "core/workbench.hpp"
#include "oracles.hpp"

using namespace gre;

namespace {

std::string bit_string(const BitStream& b) {
  std::string s;
  for (Bit x : b.bits) s.push_back(x ? '1' : '0');
  return s;
}

}  // namespace

TEST_CASE("run_encoder: GRE x=1 collapses to the zero state") {
  EncoderRun run;
  run.n_bits = 5;
  const Encoding e = run_encoder(run, 1.0);
  CHECK(bit_string(e.bits) == "10000");
  const auto& u = e.trajectory.scalars();
  REQUIRE(u.size() == 7);
  for (std::size_t n = 2; n <= 6; ++n) CHECK(u[n] == 0.0);
}

TEST_CASE("run_encoder: GRE x=1/2 matches the exact-rational oracle") {
  EncoderRun run;
  run.n_bits = 9;
  const Encoding e = run_encoder(run, 0.5);
  const auto ref = oracle::gre(oracle::Rational(1, 2), 9);
  for (std::size_t n = 0; n < 9; ++n) CHECK(e.bits[n] == ref.bits[n]);
  CHECK(bit_string(e.bits) == "001001001");
}

TEST_CASE("run_encoder: PCM x=0.75") {
  EncoderRun run;
  run.scheme = Scheme::Pcm;
  run.n_bits = 4;
  const Encoding e = run_encoder(run, 0.75);
  const auto ref = oracle::beta_expansion(oracle::Rational(3, 4), 4, 2);
  for (std::size_t n = 0; n < 4; ++n) CHECK(e.bits[n] == ref.bits[n]);
  CHECK(decode_partial_sum(e.bits, 2.0) == 0.75);
}

TEST_CASE("run_encoder: errors") {
  EncoderRun run;
  run.n_bits = 4;
  run.initial_state = {0.5};
  CHECK_THROWS_AS(run_encoder(run, 0.5), std::invalid_argument);
  run.initial_state = {0.5, 0.1};
  CHECK_THROWS_AS(run_encoder(run, 0.5), std::invalid_argument);
  run.initial_state = {0.0, 0.0};
  CHECK_NOTHROW(run_encoder(run, 0.5));
  CHECK_THROWS_AS(run_encoder(run, 2.7), std::out_of_range);
  CHECK_THROWS_AS(run_encoder(run, -0.1), std::out_of_range);

  EncoderRun pcm;
  pcm.scheme = Scheme::Pcm;
  CHECK_THROWS_AS(run_encoder(pcm, 2.5), std::out_of_range);
  pcm.n_bits = 0;
  CHECK_THROWS_AS(run_encoder(pcm, 0.5), std::invalid_argument);

  EncoderRun sd1;
  sd1.scheme = Scheme::SigmaDelta1;
  CHECK_THROWS_AS(run_encoder(sd1, 1.5), std::out_of_range);

  EncoderRun sdk;
  sdk.scheme = Scheme::SigmaDeltaK;
  sdk.params.set("k", 2);
  CHECK_THROWS_AS(run_encoder(sdk, 0.5), std::invalid_argument);  // no rule
  sdk.sdk_rule = [](double, std::span<const double>) { return Bit{0}; };
  sdk.initial_state = {0.0};
  CHECK_THROWS_AS(run_encoder(sdk, 0.5), std::invalid_argument);

  EncoderRun drift;
  drift.n_bits = 3;
  drift.params.set_per_cycle("alpha", {1.0, 1.0});
  CHECK_THROWS_AS(run_encoder(drift, 0.5), std::invalid_argument);
}

TEST_CASE("run_encoder: per-cycle gain drift is honoured") {
  EncoderRun run;
  run.n_bits = 3;
  run.params.set_per_cycle("alpha", {1.0, 1.0, 1.0});
  const Encoding a = run_encoder(run, 0.5);
  CHECK(a.bits.bits == std::vector<Bit>{0, 0, 1});
  // Cycle 1 sees (u, v) = (0, 0.5): gain 3 pushes u + alpha v over 1.
  run.params.set_per_cycle("alpha", {1.0, 3.0, 1.0});
  const Encoding b = run_encoder(run, 0.5);
  CHECK(b.bits.bits[0] == 0);
  CHECK(b.bits.bits[1] == 1);
  REQUIRE(b.bits.params.per_cycle("alpha") != nullptr);
  CHECK(b.bits.params.per_cycle("alpha")->at(1) == 3.0);
}

TEST_CASE("empirical_distortion") {
  EncoderRun gre_run;
  gre_run.n_bits = 20;
  const auto grid = uniform_grid(0.0, 1.0, 1001);
  CHECK(empirical_distortion(gre_run, canonical_decoder(gre_run), grid) <=
        (1.0 + kPhi) * std::pow(kPhi, -20.0));

  EncoderRun pcm;
  pcm.scheme = Scheme::Pcm;
  // b_0 carries weight 2^0 and is 0 on [0,1): N bits hold N - 1 binary digits.
  pcm.n_bits = 10;
  CHECK(empirical_distortion(pcm, canonical_decoder(pcm), grid) <= std::ldexp(1.0, -9));
  pcm.n_bits = 11;
  CHECK(empirical_distortion(pcm, canonical_decoder(pcm), grid) <= std::ldexp(1.0, -10));

  const std::vector<double> one{0.3};
  CHECK(empirical_distortion(pcm, canonical_decoder(pcm), one) >= 0.0);
  CHECK_THROWS_AS(empirical_distortion(pcm, canonical_decoder(pcm), std::span<const double>{}),
                  std::invalid_argument);

  EncoderRun sdk;
  sdk.scheme = Scheme::SigmaDeltaK;
  CHECK_THROWS_AS(canonical_decoder(sdk), std::invalid_argument);
}

TEST_CASE("trajectory shape and escape handling") {
  const Encoding e = gre_encode(0.3, 25, QuantizerSpec::exact());
  CHECK(e.bits.size() == 25);
  CHECK(e.trajectory.state_count() == 26);
  CHECK(e.trajectory.scalars().size() == 27);
  CHECK_FALSE(e.trajectory.escaped());

  // Band (0.5, 0.5) at alpha = 1 is far outside the admissible set.
  GreOptions opts;
  opts.escape = EscapePolicy{10.0, false};
  const Encoding wild = gre_encode(0.9, 60, QuantizerSpec::exact(1.0, 0.5), {}, opts);
  REQUIRE(wild.trajectory.escaped());
  CHECK(wild.bits.size() == 60);
  CHECK(std::abs(wild.trajectory.scalars()[*wild.trajectory.escape_index()]) > 10.0);

  opts.escape.stop_early = true;
  const Encoding cut = gre_encode(0.9, 60, QuantizerSpec::exact(1.0, 0.5), {}, opts);
  REQUIRE(cut.trajectory.truncated_at().has_value());
  CHECK(cut.bits.size() == *cut.trajectory.truncated_at());
  CHECK(cut.bits.size() < 60);
}

TEST_CASE("property: each scheme satisfies its recursion identity at every step") {
  oracle::Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = g.uniform(0.0, 1.0);
    const std::size_t n = g.index(1, 80);

    const Encoding ge = gre_encode(x, n, {g.uniform(1.0, 2.5), 1.1, 1.2, AlwaysOne{}},
                                   NoiseModel::none());
    const auto& u = ge.trajectory.scalars();
    for (std::size_t k = 0; k < n; ++k) CHECK(u[k + 2] == u[k + 1] + u[k] - ge.bits[k]);

    const Encoding pe = pcm_encode(2.0 * x, n);
    const auto& p = pe.trajectory.scalars();
    for (std::size_t k = 0; k < n; ++k) CHECK(p[k + 1] == 2.0 * (p[k] - pe.bits[k]));

    const double beta = g.uniform(1.2, 2.0);
    const Encoding be = beta_encode(x, n, BetaSpec::greedy(beta));
    const auto& b = be.trajectory.scalars();
    for (std::size_t k = 0; k < n; ++k) CHECK(b[k + 1] == beta * (b[k] - be.bits[k]));

    const Encoding se = sd1_encode(x, n, g.uniform(0.0, 1.0));
    const auto& s = se.trajectory.scalars();
    for (std::size_t k = 0; k < n; ++k) CHECK(s[k + 1] == s[k] + x - se.bits[k]);
  }
}

TEST_CASE("determinism: experiment tables independent of worker count") {
  ExperimentOptions one{500, 99, 1};
  ExperimentOptions many{500, 99, 7};
  CHECK(table_csv(escape_fraction_experiment(0.1, 30, one)) ==
        table_csv(escape_fraction_experiment(0.1, 30, many)));
  const QuantizerSpec spec{1.5, 1.2, 1.3, RandomUniformThreshold{5}};
  CHECK(table_csv(rmse_vs_n_experiment(spec, 1.0 / 64, 30, one)) ==
        table_csv(rmse_vs_n_experiment(spec, 1.0 / 64, 30, many)));
  CHECK(table_csv(to_table(bias_check(8, one))) == table_csv(to_table(bias_check(8, many))));
}

TEST_CASE("determinism: identical inputs give identical encodings") {
  const QuantizerSpec s{1.5, 1.2, 1.3, RandomUniformThreshold{3}};
  const Encoding a = gre_encode(0.41, 64, s, NoiseModel::uniform(0.01, 8));
  const Encoding b = gre_encode(0.41, 64, s, NoiseModel::uniform(0.01, 8));
  CHECK(a.bits.bits == b.bits.bits);
  CHECK(a.trajectory.scalars() == b.trajectory.scalars());
}
