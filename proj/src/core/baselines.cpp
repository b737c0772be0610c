#include "core/baselines.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gre {

Encoding pcm_encode(double x, std::size_t n_bits, double tau, const EscapePolicy& escape) {
  require_input_range(x, 0.0, 2.0, false, "pcm");
  const std::array<double, 1> initial{x};
  return run_recursion(Scheme::Pcm, ParamVector{{"tau", tau}}, initial, n_bits, escape,
                       [tau](std::span<const double> u, std::size_t) {
                         const Bit b = q_tau(u[0], tau);
                         return StepOutput{b, 2.0 * (u[0] - b)};
                       });
}

BetaSpec BetaSpec::lazy(double beta) {
  const double t = 1.0 / (beta - 1.0);
  return {beta, t, t, AlwaysZero{}};
}

void BetaSpec::validate() const {
  if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in (1, 2]");
  QuantizerSpec{1.0, nu1, nu2, resolver}.validate();
  const double lazy_tau = 1.0 / (beta - 1.0);
  constexpr double tol = 1e-12;
  if (nu1 < 1.0 - tol || nu2 > lazy_tau + tol) {
    throw std::invalid_argument("beta threshold band must lie in [1, 1/(beta-1)]");
  }
}

Encoding beta_encode(double x, std::size_t n_bits, const BetaSpec& spec,
                     const EscapePolicy& escape) {
  spec.validate();
  require_input_range(x, 0.0, spec.beta / (spec.beta - 1.0), false, "beta");
  const QuantizerSpec q{1.0, spec.nu1, spec.nu2, spec.resolver};
  const std::array<double, 1> initial{x};
  ParamVector params{{"beta", spec.beta}, {"nu1", spec.nu1}, {"nu2", spec.nu2}};
  return run_recursion(Scheme::Beta, std::move(params), initial, n_bits, escape,
                       [&](std::span<const double> u, std::size_t n) {
                         const Bit b = flaky_q(u[0], q, n);
                         return StepOutput{b, spec.beta * (u[0] - b)};
                       });
}

Encoding sd1_encode(double x, std::size_t n_bits, double u0, const EscapePolicy& escape) {
  require_input_range(x, 0.0, 1.0, false, "sd1");
  require_input_range(u0, 0.0, 1.0, false, "sd1 initial state");
  const std::array<double, 1> initial{u0};
  return run_recursion(Scheme::SigmaDelta1, ParamVector{{"x", x}}, initial, n_bits, escape,
                       [x](std::span<const double> u, std::size_t) {
                         const Bit b = q_tau(u[0] + x, 1.0);
                         return StepOutput{b, u[0] + x - b};
                       });
}

double sd1_decode(const BitStream& bits) {
  if (bits.size() == 0) throw std::invalid_argument("sd1_decode: empty bitstream");
  const auto ones = std::accumulate(bits.bits.begin(), bits.bits.end(), std::size_t{0});
  return static_cast<double>(ones) / static_cast<double>(bits.size());
}

std::vector<double> companion_coefficients(std::size_t k) {
  std::vector<double> a(k);
  double binom = 1.0;  // binom(k, j)
  for (std::size_t j = 0; j < k; ++j) {
    a[j] = ((k - 1 - j) % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  return a;
}

namespace {

void check_sdk(const SigmaDeltaKSpec& spec) {
  if (spec.order < 1) throw std::invalid_argument("sigma-delta order must be >= 1");
  if (!spec.rule) throw std::invalid_argument("sigma-delta rule must be supplied");
}

double companion_next(std::span<const double> state, const std::vector<double>& a, double x,
                      Bit b) {
  double next = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) next += a[j] * state[j];
  return next + x - b;
}

}  // namespace

SdkStep sdk_step(std::span<const double> state, double x, const SigmaDeltaKSpec& spec) {
  check_sdk(spec);
  if (state.size() != spec.order) throw std::invalid_argument("state dimension != order");
  const auto a = companion_coefficients(spec.order);
  const Bit b = spec.rule(x, state);
  SdkStep out{b, std::vector<double>(state.begin() + 1, state.end())};
  out.next.push_back(companion_next(state, a, x, b));
  return out;
}

Encoding sdk_encode(double x, std::size_t n_bits, const SigmaDeltaKSpec& spec,
                    const EscapePolicy& escape) {
  check_sdk(spec);
  std::vector<double> init = spec.initial_state;
  if (init.empty()) init.assign(spec.order, 0.0);
  if (init.size() != spec.order) throw std::invalid_argument("initial state dimension != order");
  const auto a = companion_coefficients(spec.order);
  ParamVector params{{"k", static_cast<double>(spec.order)}, {"x", x}};
  return run_recursion(Scheme::SigmaDeltaK, std::move(params), init, n_bits, escape,
                       [&](std::span<const double> u, std::size_t) {
                         const Bit b = spec.rule(x, u);
                         return StepOutput{b, companion_next(u, a, x, b)};
                       });
}

}  // namespace gre
