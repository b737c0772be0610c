#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace gre {

using Bit = std::uint8_t;

// How a flaky comparator decides when its input falls inside [nu1, nu2).
struct AlwaysZero {};
struct AlwaysOne {};
// Cycle n compares against tau_n ~ Uniform(nu1, nu2), drawn from (seed, n).
struct RandomUniformThreshold {
  std::uint64_t seed = 0;
};
// Cycle n compares against tau[n]; entries must lie in [nu1, nu2].
struct PerCycleThresholds {
  std::vector<double> tau;
};

using Resolver = std::variant<AlwaysZero, AlwaysOne, RandomUniformThreshold, PerCycleThresholds>;

std::string_view resolver_name(const Resolver& resolver);

/// Linear-threshold quantizer Q_alpha^{nu1,nu2}(u, v) = q^{nu1,nu2}(u + alpha v).
/// With nu1 == nu2 == tau it is the exact comparator q_tau(u + alpha v).
struct QuantizerSpec {
  double alpha = 1.0;
  double nu1 = 1.0;
  double nu2 = 1.0;
  Resolver resolver = AlwaysZero{};

  static QuantizerSpec exact(double alpha = 1.0, double tau = 1.0);
  static QuantizerSpec flaky(double alpha, double nu1, double nu2, Resolver resolver);

  bool is_exact() const noexcept { return nu1 == nu2; }

  // Throws std::invalid_argument when nu1 > nu2, values are non-finite, or a
  // per-cycle threshold leaves [nu1, nu2].
  void validate() const;
};

// q_tau(u) = 0 iff u < tau; the boundary belongs to 1.
constexpr Bit q_tau(double u, double tau) noexcept { return u < tau ? Bit{0} : Bit{1}; }

// Flaky comparator. Outside [nu1, nu2) the answer is forced; inside, the
// resolver decides. Throws std::out_of_range if a PerCycleThresholds resolver
// is consulted past its end.
Bit flaky_q(double u, const QuantizerSpec& spec, std::size_t cycle);

Bit q_alpha(double u, double v, const QuantizerSpec& spec, std::size_t cycle);

// As above with the gain replaced for this cycle (per-cycle parameter drift).
Bit q_alpha(double u, double v, double alpha, const QuantizerSpec& spec, std::size_t cycle);

}  // namespace gre
