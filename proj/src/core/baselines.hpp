#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "core/framework.hpp"
#include "core/quantizers.hpp"

namespace gre {

// Successive approximation: u_0 = x in [0, 2], b_n = q_tau(u_n),
// u_{n+1} = 2 (u_n - b_n).
Encoding pcm_encode(double x, std::size_t n_bits, double tau = 1.0, const EscapePolicy& escape = {});

/// Beta encoder with a possibly flaky comparator on [nu1, nu2).
struct BetaSpec {
  double beta = 1.8;
  double nu1 = 1.0;
  double nu2 = 1.0;
  Resolver resolver = AlwaysZero{};

  static BetaSpec greedy(double beta) { return {beta, 1.0, 1.0, AlwaysZero{}}; }
  static BetaSpec lazy(double beta);
  // Throws std::invalid_argument unless 1 < beta <= 2 and the band lies in
  // [1, 1/(beta-1)].
  void validate() const;
};

// u_0 = x in [0, beta/(beta-1)], b_n = q(u_n), u_{n+1} = beta (u_n - b_n).
Encoding beta_encode(double x, std::size_t n_bits, const BetaSpec& spec,
                     const EscapePolicy& escape = {});

// First-order Sigma-Delta: b_n = q_1(u_n + x), u_{n+1} = u_n + x - b_n.
Encoding sd1_encode(double x, std::size_t n_bits, double u0 = 0.0, const EscapePolicy& escape = {});

// Running mean of the bits.
double sd1_decode(const BitStream& bits);

/// k-th order Sigma-Delta in companion form with an injected decision rule.
struct SigmaDeltaKSpec {
  using Rule = std::function<Bit(double x, std::span<const double> state)>;
  std::size_t order = 1;
  Rule rule;
  std::vector<double> initial_state;  // u_0..u_{k-1}; zeros when empty
};

// a_j^{(k)} = (-1)^{k-1-j} binom(k, j), j = 0..k-1
std::vector<double> companion_coefficients(std::size_t k);

struct SdkStep {
  Bit bit;
  std::vector<double> next;
};

// u_{n+1} = L_k u_n + (x - b_n) e
SdkStep sdk_step(std::span<const double> state, double x, const SigmaDeltaKSpec& spec);

Encoding sdk_encode(double x, std::size_t n_bits, const SigmaDeltaKSpec& spec,
                    const EscapePolicy& escape = {});

}  // namespace gre
