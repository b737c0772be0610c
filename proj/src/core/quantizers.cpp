#include "core/quantizers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/rng.hpp"

namespace gre {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view resolver_name(const Resolver& resolver) {
  return std::visit(Overloaded{
                        [](const AlwaysZero&) { return std::string_view{"zero"}; },
                        [](const AlwaysOne&) { return std::string_view{"one"}; },
                        [](const RandomUniformThreshold&) { return std::string_view{"random"}; },
                        [](const PerCycleThresholds&) { return std::string_view{"sequence"}; },
                    },
                    resolver);
}

QuantizerSpec QuantizerSpec::exact(double alpha, double tau) {
  return QuantizerSpec{alpha, tau, tau, AlwaysZero{}};
}

QuantizerSpec QuantizerSpec::flaky(double alpha, double nu1, double nu2, Resolver resolver) {
  QuantizerSpec spec{alpha, nu1, nu2, std::move(resolver)};
  spec.validate();
  return spec;
}

void QuantizerSpec::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(nu1) || !std::isfinite(nu2)) {
    throw std::invalid_argument("quantizer parameters must be finite");
  }
  if (nu1 > nu2) {
    throw std::invalid_argument("quantizer band requires nu1 <= nu2 (got " + std::to_string(nu1) +
                                " > " + std::to_string(nu2) + ")");
  }
  if (const auto* seq = std::get_if<PerCycleThresholds>(&resolver)) {
    for (double tau : seq->tau) {
      if (!(tau >= nu1 && tau <= nu2)) {
        throw std::invalid_argument("per-cycle threshold " + std::to_string(tau) +
                                    " outside [nu1, nu2]");
      }
    }
  }
}

Bit flaky_q(double u, const QuantizerSpec& spec, std::size_t cycle) {
  if (u < spec.nu1) return 0;
  if (u >= spec.nu2) return 1;
  return std::visit(
      Overloaded{
          [](const AlwaysZero&) { return Bit{0}; },
          [](const AlwaysOne&) { return Bit{1}; },
          [&](const RandomUniformThreshold& r) {
            const double tau = rng::open_uniform(r.seed, cycle, spec.nu1, spec.nu2);
            return q_tau(u, tau);
          },
          [&](const PerCycleThresholds& seq) {
            if (cycle >= seq.tau.size()) {
              throw std::out_of_range("per-cycle threshold sequence has " +
                                      std::to_string(seq.tau.size()) + " entries, cycle " +
                                      std::to_string(cycle) + " requested");
            }
            return q_tau(u, seq.tau[cycle]);
          },
      },
      spec.resolver);
}

Bit q_alpha(double u, double v, const QuantizerSpec& spec, std::size_t cycle) {
  return flaky_q(u + spec.alpha * v, spec, cycle);
}

Bit q_alpha(double u, double v, double alpha, const QuantizerSpec& spec, std::size_t cycle) {
  return flaky_q(u + alpha * v, spec, cycle);
}

}  // namespace gre
