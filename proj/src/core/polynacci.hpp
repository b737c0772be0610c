#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/framework.hpp"
#include "core/quantizers.hpp"

namespace gre {

struct CharacteristicRoot {
  double beta = 0.0;
  // Largest modulus among the other L-1 roots of s^L - s^{L-1} - ... - 1.
  double max_other_modulus = 0.0;
  std::size_t iterations = 0;
};

/// Dominant root of s^L = s^{L-1} + ... + 1 on (1, 2) by bisection.
/// Throws std::invalid_argument unless L >= 2 and tol > 0.
CharacteristicRoot beta_L(std::size_t L, double tol = 1e-12);

// Weights c_0..c_{L-1} with c_0 = 1, c_{L-1} = beta, c_{j-1} = beta (c_j - 1).
// Under the L-term recursion w_n = sum_j c_j u_{n+j} obeys
// w_{n+1} = beta (w_n - b_n), so x - sum b_n beta^{-n} = beta^{-N} w_N.
std::vector<double> telescoping_weights(std::size_t L, double beta);

/// b_n = q^{nu1,nu2}(sum_i w_i u_{n+i}). The quantizer's alpha is ignored.
struct PolynacciRule {
  std::vector<double> weights;
  QuantizerSpec quantizer;
};

// GRE-compatible rule for L = 2: weights (1, alpha).
PolynacciRule rule_from_gre(const QuantizerSpec& spec);

// Telescoping weights with the exact threshold at the midpoint of
// [1, 1/(beta_L - 1)]; w_n then follows a cautious beta encoder.
PolynacciRule default_rule(std::size_t L);

struct PolynacciConfig {
  std::size_t L = 3;
  std::optional<PolynacciRule> rule;  // default_rule(L) when empty
  EscapePolicy escape;
};

struct StabilityReport {
  double beta = 0.0;
  double max_abs_state = 0.0;
  bool escaped = false;
  std::optional<std::size_t> escape_index;
  // beta^{-N} |sum_j c_j u_{N+j}| with telescoping weights; equals
  // |x - sum b_n beta^{-n}| up to rounding.
  double residual_bound = 0.0;
  bool heuristic_rule = true;
};

struct PolynacciEncoding {
  Encoding encoding;
  StabilityReport report;
};

/// u_0 = x, u_1 = ... = u_{L-1} = 0, u_{n+L} = u_{n+L-1} + ... + u_n - b_n.
/// Instability is reported, never raised. Throws std::out_of_range if x < 0
/// and std::invalid_argument for a malformed configuration.
PolynacciEncoding polynacci_encode(double x, std::size_t n_bits, const PolynacciConfig& config);

}  // namespace gre
