#include "core/workbench.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/constants.hpp"
#include "core/decoders.hpp"
#include "core/golden_encoder.hpp"
#include "core/invariant_set.hpp"
#include "core/rng.hpp"

namespace gre {

void ExperimentTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table '" + name +
                                "' has " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ExperimentTable::column(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return i;
  }
  throw std::out_of_range("no column '" + std::string(col) + "' in table '" + name + "'");
}

double ExperimentTable::number(std::size_t row, std::string_view col) const {
  const Cell& c = rows.at(row).at(column(col));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*u);
  throw std::invalid_argument("column '" + std::string(col) + "' is not numeric");
}

namespace {

std::uint64_t trial_key(std::uint64_t seed, std::size_t trial) {
  return rng::derive(seed, static_cast<std::uint64_t>(trial));
}

double draw_unit(std::uint64_t key) { return rng::open_uniform(rng::derive(key, rng::kStreamInput), 0); }

std::uint64_t threshold_seed(std::uint64_t key) { return rng::derive(key, rng::kStreamThreshold); }

std::uint64_t noise_seed(std::uint64_t key) { return rng::derive(key, rng::kStreamNoise); }

void require_trials(const ExperimentOptions& opt, std::size_t minimum) {
  if (opt.trials < minimum) {
    throw std::invalid_argument("experiment needs at least " + std::to_string(minimum) +
                                " trials, got " + std::to_string(opt.trials));
  }
}

// Resolver for one trial: random thresholds get a per-trial stream.
Resolver trial_resolver(const Resolver& base, std::uint64_t key) {
  if (const auto* r = std::get_if<RandomUniformThreshold>(&base)) {
    return RandomUniformThreshold{rng::derive(threshold_seed(key), r->seed)};
  }
  return base;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  CompensatedSum s;
  for (double x : xs) s.add(x);
  m.mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  CompensatedSum q;
  for (double x : xs) q.add((x - m.mean) * (x - m.mean));
  m.variance = q.value() / static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace

ExperimentTable escape_fraction_experiment(double delta, std::size_t n_max,
                                           const ExperimentOptions& opt) {
  if (!(delta >= 0.0) || delta >= 1.0) throw std::invalid_argument("delta must lie in [0, 1)");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  require_trials(opt, 100);

  // escaped[t][N-1] = |u_N| > 1
  const auto runs = run_trials(opt.trials, opt.workers, [&](std::size_t t) {
    const std::uint64_t key = trial_key(opt.seed, t);
    const QuantizerSpec spec = delta == 0.0
                                   ? QuantizerSpec::exact(1.0, 1.0)
                                   : QuantizerSpec{1.0, 1.0 - delta, 1.0 + delta,
                                                   RandomUniformThreshold{threshold_seed(key)}};
    const Encoding e = gre_encode(draw_unit(key), n_max, spec);
    const auto& u = e.trajectory.scalars();
    std::vector<std::uint8_t> out(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = std::abs(u[n]) > 1.0;
    return out;
  });

  ExperimentTable table{"escape", {"N", "delta", "fraction", "escapes", "trials", "seed"}, {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::uint64_t count = 0;
    for (const auto& r : runs) count += r[n - 1];
    table.add_row({static_cast<std::uint64_t>(n), delta,
                   static_cast<double>(count) / static_cast<double>(opt.trials), count,
                   static_cast<std::uint64_t>(opt.trials), opt.seed});
  }
  return table;
}

double noise_variance_factor(std::size_t n_bits) {
  const double r = 1.0 / (kPhi * kPhi);
  return (1.0 - std::pow(r, static_cast<double>(n_bits))) / (1.0 - r);
}

ExperimentTable rmse_vs_n_experiment(const QuantizerSpec& spec, double noise_amp,
                                     std::size_t n_max, const ExperimentOptions& opt) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  require_trials(opt, 1);
  spec.validate();
  if (!(noise_amp >= 0.0 && noise_amp < max_noise_margin()) ||
      !ParamRegion(noise_amp).contains(spec.alpha, spec.nu1, spec.nu2)) {
    throw std::invalid_argument("quantizer (alpha, nu1, nu2) not admissible for mu = noise amplitude");
  }

  const auto errors = run_trials(opt.trials, opt.workers, [&](std::size_t t) {
    const std::uint64_t key = trial_key(opt.seed, t);
    QuantizerSpec s = spec;
    s.resolver = trial_resolver(spec.resolver, key);
    const double x = draw_unit(key);
    const Encoding e = gre_encode(x, n_max, s, NoiseModel::uniform(noise_amp, noise_seed(key)));
    auto partial = partial_sum_sequence(e.bits.bits, kPhi);
    for (double& p : partial) p = x - p;
    return partial;
  });

  ExperimentTable table{"rmse",
                        {"N", "rmse", "mean_error", "max_abs_error", "noise_floor", "decay_bound",
                         "noise_amp", "trials", "seed"},
                        {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    CompensatedSum sq;
    CompensatedSum sum;
    double worst = 0.0;
    for (const auto& e : errors) {
      const double v = e[n - 1];
      sq.add(v * v);
      sum.add(v);
      worst = std::max(worst, std::abs(v));
    }
    const double trials = static_cast<double>(opt.trials);
    const double floor = std::sqrt(noise_variance_factor(n) * noise_amp * noise_amp / 3.0);
    const double decay = (1.0 + kPhi) * std::pow(kPhi, -static_cast<double>(n));
    table.add_row({static_cast<std::uint64_t>(n), std::sqrt(sq.value() / trials),
                   sum.value() / trials, worst, floor, decay, noise_amp,
                   static_cast<std::uint64_t>(opt.trials), opt.seed});
  }
  return table;
}

NoiseVarianceResult noise_variance_check(double sigma, std::size_t n_bits,
                                         const ExperimentOptions& opt) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (n_bits < 1) throw std::invalid_argument("N must be >= 1");
  require_trials(opt, 2);
  const double amp = sigma * std::sqrt(3.0);
  constexpr double alpha = 1.5, nu1 = 1.2, nu2 = 1.3;
  if (!(amp < max_noise_margin()) || !ParamRegion(amp).contains(alpha, nu1, nu2)) {
    throw std::invalid_argument("sigma too large: (1.5, 1.2, 1.3) leaves the admissible region");
  }

  struct Sample {
    double noise_sum = 0.0;
    double error = 0.0;
  };
  const auto samples = run_trials(opt.trials, opt.workers, [&](std::size_t t) {
    const std::uint64_t key = trial_key(opt.seed, t);
    const QuantizerSpec spec{alpha, nu1, nu2, RandomUniformThreshold{threshold_seed(key)}};
    const NoiseModel noise = NoiseModel::uniform(amp, noise_seed(key));
    const double x = draw_unit(key);
    const Encoding e = gre_encode(x, n_bits, spec, noise);
    CompensatedSum s;
    for (std::size_t n = 0; n < n_bits; ++n) {
      s.add(noise.sample(n) * std::pow(kPhi, -static_cast<double>(n)));
    }
    return Sample{s.value(), x - decode_partial_sum(e.bits, kPhi)};
  });

  std::vector<double> sums, errs;
  sums.reserve(samples.size());
  errs.reserve(samples.size());
  for (const auto& s : samples) {
    sums.push_back(s.noise_sum);
    errs.push_back(s.error);
  }
  NoiseVarianceResult r;
  r.sigma = sigma;
  r.n_bits = n_bits;
  r.predicted = noise_variance_factor(n_bits) * sigma * sigma;
  r.empirical_noise_sum = moments(sums).variance;
  r.empirical_error = moments(errs).variance;
  r.trials = opt.trials;
  r.seed = opt.seed;
  return r;
}

BiasResult bias_check(std::size_t n_bits, const ExperimentOptions& opt) {
  if (n_bits < 1) throw std::invalid_argument("N must be >= 1");
  require_trials(opt, 2);
  const auto errs = run_trials(opt.trials, opt.workers, [&](std::size_t t) {
    const double x = draw_unit(trial_key(opt.seed, t));
    const Encoding e = gre_encode(x, n_bits, QuantizerSpec::exact());
    return x - decode_partial_sum(e.bits, kPhi);
  });
  const Moments m = moments(errs);
  BiasResult r;
  r.n_bits = n_bits;
  r.mean_error = m.mean;
  r.standard_error = std::sqrt(m.variance / static_cast<double>(errs.size()));
  r.xi = bias_term(n_bits);
  r.min_error = *std::min_element(errs.begin(), errs.end());
  r.all_positive = r.min_error > 0.0;
  r.trials = opt.trials;
  r.seed = opt.seed;
  return r;
}

ExperimentTable robustness_sweep(double mu, const std::vector<double>& alpha_grid,
                                 const std::vector<std::pair<double, double>>& nu_grid,
                                 const SweepOptions& opt) {
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
  require_trials(opt.base, 1);
  if (opt.n_bits < 1) throw std::invalid_argument("N must be >= 1");
  const bool mu_ok = mu < max_noise_margin();
  const double x_lo = mu_ok ? std::min(1.0, invariant_rect(mu).seed_interval().first) : 0.0;

  ExperimentTable table{"sweep",
                        {"alpha", "nu1", "nu2", "mu", "inside", "max_abs_state", "escapes",
                         "max_decode_error", "trials", "seed"},
                        {}};
  for (double alpha : alpha_grid) {
    for (const auto& [nu1, nu2] : nu_grid) {
      QuantizerSpec{alpha, nu1, nu2, AlwaysZero{}}.validate();
      const bool inside = mu_ok && ParamRegion(mu).contains(alpha, nu1, nu2);

      struct Outcome {
        double max_abs = 0.0;
        bool escaped = false;
        double error = 0.0;
      };
      const auto outcomes = run_trials(opt.base.trials, opt.base.workers, [&](std::size_t t) {
        const std::uint64_t key = trial_key(opt.base.seed, t);
        Resolver resolver;
        switch (t % 3) {
          case 0: resolver = AlwaysZero{}; break;
          case 1: resolver = AlwaysOne{}; break;
          default: resolver = RandomUniformThreshold{threshold_seed(key)}; break;
        }
        const double x = x_lo + (1.0 - x_lo) * draw_unit(key);
        const Encoding e = gre_encode(x, opt.n_bits, QuantizerSpec{alpha, nu1, nu2, resolver},
                                      NoiseModel::uniform(mu, noise_seed(key)));
        return Outcome{e.trajectory.max_abs(), e.trajectory.escaped(),
                       std::abs(x - decode_partial_sum(e.bits, kPhi))};
      });

      Outcome worst;
      std::uint64_t escapes = 0;
      for (const auto& o : outcomes) {
        worst.max_abs = std::max(worst.max_abs, o.max_abs);
        worst.error = std::max(worst.error, o.error);
        escapes += o.escaped;
      }
      table.add_row({alpha, nu1, nu2, mu, std::uint64_t{inside}, worst.max_abs, escapes,
                     worst.error, static_cast<std::uint64_t>(opt.base.trials), opt.base.seed});
    }
  }
  return table;
}

ExperimentTable to_table(const NoiseVarianceResult& r) {
  ExperimentTable t{"variance",
                    {"N", "sigma", "predicted", "empirical_noise_sum", "empirical_error",
                     "ratio", "trials", "seed"},
                    {}};
  t.add_row({static_cast<std::uint64_t>(r.n_bits), r.sigma, r.predicted, r.empirical_noise_sum,
             r.empirical_error, r.predicted > 0.0 ? r.empirical_error / r.predicted : 0.0,
             static_cast<std::uint64_t>(r.trials), r.seed});
  return t;
}

ExperimentTable to_table(const BiasResult& r) {
  ExperimentTable t{"bias",
                    {"N", "mean_error", "standard_error", "xi", "min_error", "all_positive",
                     "trials", "seed"},
                    {}};
  t.add_row({static_cast<std::uint64_t>(r.n_bits), r.mean_error, r.standard_error, r.xi,
             r.min_error, std::uint64_t{r.all_positive}, static_cast<std::uint64_t>(r.trials),
             r.seed});
  return t;
}

}  // namespace gre
