#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "core/baselines.hpp"
#include "core/framework.hpp"
#include "core/golden_encoder.hpp"
#include "core/polynacci.hpp"

namespace gre {

/// Scheme-agnostic description of one encoder configuration.
///
/// Parameters read from `params` (defaults in brackets):
///   pcm:  tau [1]
///   beta: beta [2], nu1/nu2 [tau, else 1]
///   sd1:  none
///   sdk:  k [1]
///   gre:  alpha [1], nu1 [1], nu2 [nu1]; per-cycle "alpha" allowed
///   poly: L [3]
/// An empty initial_state selects the scheme default. For x-seeded schemes
/// (pcm, beta, gre, poly) component 0 is the input x and the remaining
/// components must be 0; sd1 and sdk take initial_state as given.
struct EncoderRun {
  Scheme scheme = Scheme::Gre;
  ParamVector params;
  std::vector<double> initial_state;
  std::size_t n_bits = 1;
  Resolver resolver = AlwaysZero{};
  NoiseModel noise;                            // gre only
  SigmaDeltaKSpec::Rule sdk_rule;              // sdk only
  std::optional<PolynacciRule> poly_rule;      // poly only
  EscapePolicy escape;
};

// State dimension of the scheme under `run`.
std::size_t scheme_order(const EncoderRun& run);

/// Throws std::invalid_argument on a malformed run (n_bits = 0, dimension
/// mismatch, missing rule) and std::out_of_range when x is outside the
/// scheme's input interval.
Encoding run_encoder(const EncoderRun& run, double x);

using Decoder = std::function<double(const BitStream&)>;

// Exact inverse for the scheme: base-beta partial sums, or the bit mean for
// sd1. Throws std::invalid_argument for sdk, which has no canonical decoder.
Decoder canonical_decoder(const EncoderRun& run);

// max over samples of |x - decoder(E_N(x))|. Throws std::invalid_argument on
// an empty sample set.
double empirical_distortion(const EncoderRun& run, const Decoder& decoder,
                            std::span<const double> samples);

}  // namespace gre
