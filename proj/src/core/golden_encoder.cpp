#include "core/golden_encoder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "core/constants.hpp"
#include "core/rng.hpp"

namespace gre {

NoiseModel NoiseModel::uniform(double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("noise amplitude must be >= 0");
  NoiseModel m;
  if (amplitude > 0.0) m.kind_ = UniformAdditive{amplitude, seed};
  return m;
}

NoiseModel NoiseModel::sequence(std::vector<double> eps) {
  NoiseModel m;
  m.kind_ = Sequence{std::move(eps)};
  return m;
}

double NoiseModel::sample(std::size_t cycle) const {
  if (const auto* u = std::get_if<UniformAdditive>(&kind_)) {
    return rng::open_uniform(u->seed, cycle, -u->amplitude, u->amplitude);
  }
  if (const auto* s = std::get_if<Sequence>(&kind_)) {
    if (cycle >= s->eps.size()) {
      throw std::out_of_range("noise sequence too short for cycle " + std::to_string(cycle));
    }
    return s->eps[cycle];
  }
  return 0.0;
}

double NoiseModel::bound() const noexcept {
  if (const auto* u = std::get_if<UniformAdditive>(&kind_)) return u->amplitude;
  if (const auto* s = std::get_if<Sequence>(&kind_)) {
    double m = 0.0;
    for (double e : s->eps) m = std::max(m, std::abs(e));
    return m;
  }
  return 0.0;
}

GreStep gre_step(GreState state, const QuantizerSpec& spec, double eps, std::size_t cycle) {
  return gre_step(state, spec.alpha, spec, eps, cycle);
}

GreStep gre_step(GreState state, double alpha, const QuantizerSpec& spec, double eps,
                 std::size_t cycle) {
  const Bit b = q_alpha(state.u, state.v, alpha, spec, cycle);
  return {b, GreState{state.v, state.u + state.v - b + eps}};
}

Encoding gre_encode(double x, std::size_t n_bits, const QuantizerSpec& spec,
                    const NoiseModel& noise, const GreOptions& options) {
  require_input_range(x, 0.0, 1.0 + kPhi, /*hi_open=*/true, "gre");
  spec.validate();
  const bool drift = !options.alpha_per_cycle.empty();
  if (drift && options.alpha_per_cycle.size() != n_bits) {
    throw std::invalid_argument("alpha_per_cycle must have one entry per cycle");
  }

  ParamVector params{{"alpha", spec.alpha}, {"nu1", spec.nu1}, {"nu2", spec.nu2}};
  if (!noise.is_none()) params.set("noise_amp", noise.bound());
  if (drift) params.set_per_cycle("alpha", options.alpha_per_cycle);

  const std::array<double, 2> initial{x, 0.0};
  Encoding enc = run_recursion(
      Scheme::Gre, std::move(params), initial, n_bits, options.escape,
      [&](std::span<const double> w, std::size_t n) {
        const double alpha = drift ? options.alpha_per_cycle[n] : spec.alpha;
        const GreStep s = gre_step(GreState{w[0], w[1]}, alpha, spec, noise.sample(n), n);
        return StepOutput{s.bit, s.next.v};
      });
  if (x > 1.0) enc.bits.warnings.emplace_back(kWarnOutsideUnitInterval);
  return enc;
}

}  // namespace gre
