#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "core/quantizers.hpp"

namespace gre {

using Cell = std::variant<double, std::uint64_t, std::string>;

/// Column-typed result table. Every experiment table carries "trials" and
/// "seed" columns.
struct ExperimentTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws std::invalid_argument on width mismatch
  std::size_t column(std::string_view name) const;  // throws std::out_of_range
  double number(std::size_t row, std::string_view column) const;
};

// Runs fn(trial) for trial = 0..trials-1 on up to `workers` threads
// (0 = hardware concurrency) and returns results in trial order, so any
// ordered reduction over them is independent of the worker count.
template <class Fn>
auto run_trials(std::size_t trials, unsigned workers, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(trials);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += workers) out[t] = fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct ExperimentOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

// Fraction of x ~ U(0,1) with |u_N| > 1 under Q_1 whose threshold is drawn
// per cycle from (1 - delta, 1 + delta). Row per N = 1..n_max. delta = 0 runs
// the exact quantizer. Throws std::invalid_argument if delta < 0 or
// trials < 100.
ExperimentTable escape_fraction_experiment(double delta, std::size_t n_max,
                                           const ExperimentOptions& opt);

// RMSE over x ~ U(0,1) of x - sum_{n<N} b_n phi^{-n}, with eps_n ~ U(-amp, amp)
// and the spec's resolver re-seeded per trial. Throws std::invalid_argument
// when the spec is not admissible for mu = noise_amp.
ExperimentTable rmse_vs_n_experiment(const QuantizerSpec& spec, double noise_amp,
                                     std::size_t n_max, const ExperimentOptions& opt);

// (1 - phi^{-2N}) / (1 - phi^{-2})
double noise_variance_factor(std::size_t n_bits);

struct NoiseVarianceResult {
  double sigma = 0.0;
  std::size_t n_bits = 0;
  double predicted = 0.0;
  double empirical_noise_sum = 0.0;  // sample variance of sum_{n<N} eps_n phi^{-n}
  double empirical_error = 0.0;      // sample variance of x - sum b_n phi^{-n}
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// eps_n uniform with standard deviation sigma (amplitude sigma sqrt 3),
// encoder (alpha, nu1, nu2) = (1.5, 1.2, 1.3) with random thresholds.
// Throws std::invalid_argument when that spec leaves G(sigma sqrt 3).
NoiseVarianceResult noise_variance_check(double sigma, std::size_t n_bits,
                                         const ExperimentOptions& opt);

struct BiasResult {
  std::size_t n_bits = 0;
  double mean_error = 0.0;
  double standard_error = 0.0;
  double xi = 0.0;
  double min_error = 0.0;
  bool all_positive = false;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Exact Q_1 encoding of x ~ U(0,1).
BiasResult bias_check(std::size_t n_bits, const ExperimentOptions& opt);

struct SweepOptions {
  ExperimentOptions base{300, 1, 0};
  std::size_t n_bits = 48;
};

/// For each alpha and (nu1, nu2) band: membership in G(mu), then trials with
/// resolvers rotating zero / one / random, |eps_n| <= mu and x drawn from the
/// part of [0,1] whose seed state lies in R(mu). Columns: alpha, nu1, nu2, mu,
/// inside, max_abs_state, escapes, max_decode_error, trials, seed.
ExperimentTable robustness_sweep(double mu, const std::vector<double>& alpha_grid,
                                 const std::vector<std::pair<double, double>>& nu_grid,
                                 const SweepOptions& opt);

ExperimentTable to_table(const NoiseVarianceResult& r);
ExperimentTable to_table(const BiasResult& r);

}  // namespace gre
