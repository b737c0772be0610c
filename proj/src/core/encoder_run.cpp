#include "core/encoder_run.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/constants.hpp"
#include "core/decoders.hpp"

namespace gre {

namespace {

std::size_t integer_param(const ParamVector& p, std::string_view name, double fallback) {
  const double v = p.get_or(name, fallback);
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw std::invalid_argument("parameter '" + std::string(name) + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

bool x_seeded(Scheme s) { return s != Scheme::SigmaDelta1 && s != Scheme::SigmaDeltaK; }

}  // namespace

std::size_t scheme_order(const EncoderRun& run) {
  switch (run.scheme) {
    case Scheme::Gre:
      return 2;
    case Scheme::SigmaDeltaK:
      return integer_param(run.params, "k", 1.0);
    case Scheme::Polynacci:
      return integer_param(run.params, "L", 3.0);
    default:
      return 1;
  }
}

Encoding run_encoder(const EncoderRun& run, double x) {
  if (run.n_bits < 1) throw std::invalid_argument("n_bits must be >= 1");
  const std::size_t order = scheme_order(run);
  if (!run.initial_state.empty()) {
    if (run.initial_state.size() != order) {
      throw std::invalid_argument("initial_state has dimension " +
                                  std::to_string(run.initial_state.size()) + ", scheme '" +
                                  std::string(scheme_name(run.scheme)) + "' needs " +
                                  std::to_string(order));
    }
    if (x_seeded(run.scheme) &&
        std::any_of(run.initial_state.begin() + 1, run.initial_state.end(),
                    [](double u) { return u != 0.0; })) {
      throw std::invalid_argument("scheme '" + std::string(scheme_name(run.scheme)) +
                                  "' fixes u_1.. to 0");
    }
  }
  run.params.check_cycles(run.n_bits);
  const ParamVector& p = run.params;

  switch (run.scheme) {
    case Scheme::Pcm:
      return pcm_encode(x, run.n_bits, p.get_or("tau", 1.0), run.escape);
    case Scheme::Beta: {
      const double tau = p.get_or("tau", 1.0);
      BetaSpec spec{p.get_or("beta", 2.0), p.get_or("nu1", tau), p.get_or("nu2", tau),
                    run.resolver};
      return beta_encode(x, run.n_bits, spec, run.escape);
    }
    case Scheme::SigmaDelta1:
      return sd1_encode(x, run.n_bits, run.initial_state.empty() ? 0.0 : run.initial_state[0],
                        run.escape);
    case Scheme::SigmaDeltaK: {
      if (!run.sdk_rule) throw std::invalid_argument("sdk requires a decision rule");
      SigmaDeltaKSpec spec{order, run.sdk_rule, run.initial_state};
      return sdk_encode(x, run.n_bits, spec, run.escape);
    }
    case Scheme::Gre: {
      const double nu1 = p.get_or("nu1", 1.0);
      QuantizerSpec spec{p.get_or("alpha", 1.0), nu1, p.get_or("nu2", nu1), run.resolver};
      GreOptions opts;
      opts.escape = run.escape;
      if (const auto* a = p.per_cycle("alpha")) opts.alpha_per_cycle = *a;
      return gre_encode(x, run.n_bits, spec, run.noise, opts);
    }
    case Scheme::Polynacci: {
      PolynacciConfig cfg{order, run.poly_rule, run.escape};
      return polynacci_encode(x, run.n_bits, cfg).encoding;
    }
  }
  throw std::invalid_argument("unknown scheme");
}

Decoder canonical_decoder(const EncoderRun& run) {
  switch (run.scheme) {
    case Scheme::Pcm:
      return [](const BitStream& b) { return decode_partial_sum(b, 2.0); };
    case Scheme::Beta: {
      const double beta = run.params.get_or("beta", 2.0);
      return [beta](const BitStream& b) { return decode_partial_sum(b, beta); };
    }
    case Scheme::SigmaDelta1:
      return [](const BitStream& b) { return sd1_decode(b); };
    case Scheme::Gre:
      return [](const BitStream& b) { return decode_partial_sum(b, kPhi); };
    case Scheme::Polynacci: {
      const double beta = beta_L(scheme_order(run)).beta;
      return [beta](const BitStream& b) { return decode_partial_sum(b, beta); };
    }
    case Scheme::SigmaDeltaK:
      break;
  }
  throw std::invalid_argument("no canonical decoder for scheme '" +
                              std::string(scheme_name(run.scheme)) + "'");
}

double empirical_distortion(const EncoderRun& run, const Decoder& decoder,
                            std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_distortion: empty sample set");
  if (!decoder) throw std::invalid_argument("empirical_distortion: decoder not set");
  double worst = 0.0;
  for (double x : samples) {
    const Encoding e = run_encoder(run, x);
    worst = std::max(worst, std::abs(x - decoder(e.bits)));
  }
  return worst;
}

}  // namespace gre
