#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "core/framework.hpp"
#include "core/quantizers.hpp"

namespace gre {

/// Encoder state (u_n, u_{n+1}).
struct GreState {
  double u = 0.0;
  double v = 0.0;
};

/// Additive arithmetic imperfection eps_n entering u_{n+2}.
class NoiseModel {
 public:
  struct None {};
  // eps_n ~ Uniform(-amplitude, amplitude), drawn from (seed, n).
  struct UniformAdditive {
    double amplitude = 0.0;
    std::uint64_t seed = 0;
  };
  struct Sequence {
    std::vector<double> eps;
  };

  NoiseModel() = default;
  static NoiseModel none() { return NoiseModel{}; }
  static NoiseModel uniform(double amplitude, std::uint64_t seed);
  static NoiseModel sequence(std::vector<double> eps);

  double sample(std::size_t cycle) const;
  // sup |eps_n|
  double bound() const noexcept;
  bool is_none() const noexcept { return std::holds_alternative<None>(kind_); }

 private:
  std::variant<None, UniformAdditive, Sequence> kind_;
};

struct GreStep {
  Bit bit;
  GreState next;
};

// One cycle: b = Q_alpha(u, v), next = (v, u + v - b + eps).
GreStep gre_step(GreState state, const QuantizerSpec& spec, double eps, std::size_t cycle);
GreStep gre_step(GreState state, double alpha, const QuantizerSpec& spec, double eps,
                 std::size_t cycle);

struct GreOptions {
  // Gain used at cycle n instead of spec.alpha (length must equal N when set).
  std::vector<double> alpha_per_cycle;
  EscapePolicy escape;
};

inline constexpr char kWarnOutsideUnitInterval[] =
    "x outside [0,1]: robustness guarantees not claimed";

/// Golden ratio encoder: u_0 = x, u_1 = 0, u_{n+2} = u_{n+1} + u_n - b_n + eps_n.
/// x must lie in [0, 1 + phi); inputs above 1 are flagged with a warning.
Encoding gre_encode(double x, std::size_t n_bits, const QuantizerSpec& spec,
                    const NoiseModel& noise = {}, const GreOptions& options = {});

}  // namespace gre
