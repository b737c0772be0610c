#include "core/polynacci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace gre {

namespace {

// s^L - (s^{L-1} + ... + 1) by Horner.
double characteristic(std::size_t L, double s) {
  double p = 1.0;
  for (std::size_t j = 0; j + 1 < L; ++j) p = p * s - 1.0;
  return p * s - 1.0;
}

double other_roots_modulus(std::size_t L, double beta) {
  // Companion matrix of s^L - s^{L-1} - ... - 1; drop the root nearest beta.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(L); ++j) C(0, j) = 1.0;
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(L); ++i) C(i, i - 1) = 1.0;
  const Eigen::VectorXcd roots = C.eigenvalues();
  Eigen::Index dominant = 0;
  double closest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double d = std::abs(roots[i] - beta);
    if (d < closest) {
      closest = d;
      dominant = i;
    }
  }
  double best = 0.0;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (i != dominant) best = std::max(best, std::abs(roots[i]));
  }
  return best;
}

// Full double precision; a looser root visibly biases decodes at N ~ 60.
constexpr double kRootTol = 4.0 * std::numeric_limits<double>::epsilon();

}  // namespace

CharacteristicRoot beta_L(std::size_t L, double tol) {
  if (L < 2) throw std::invalid_argument("beta_L requires L >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("beta_L requires tol > 0");
  // p(1) = 1 - L < 0 and p(2) = 1 > 0.
  double lo = 1.0;
  double hi = 2.0;
  CharacteristicRoot out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (characteristic(L, mid) < 0.0 ? lo : hi) = mid;
    ++out.iterations;
  }
  out.beta = 0.5 * (lo + hi);
  out.max_other_modulus = other_roots_modulus(L, out.beta);
  return out;
}

std::vector<double> telescoping_weights(std::size_t L, double beta) {
  if (L < 2) throw std::invalid_argument("telescoping_weights requires L >= 2");
  std::vector<double> c(L);
  c[L - 1] = beta;
  for (std::size_t j = L - 1; j > 1; --j) c[j - 1] = beta * (c[j] - 1.0);
  c[0] = 1.0;
  return c;
}

PolynacciRule rule_from_gre(const QuantizerSpec& spec) { return {{1.0, spec.alpha}, spec}; }

PolynacciRule default_rule(std::size_t L) {
  const double beta = beta_L(L, kRootTol).beta;
  const double tau = 0.5 * (1.0 + 1.0 / (beta - 1.0));
  return {telescoping_weights(L, beta), QuantizerSpec::exact(1.0, tau)};
}

PolynacciEncoding polynacci_encode(double x, std::size_t n_bits, const PolynacciConfig& config) {
  const std::size_t L = config.L;
  if (L < 2) throw std::invalid_argument("polynacci order L must be >= 2");
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::out_of_range("poly input x must be finite and >= 0");
  }
  const bool heuristic = !config.rule.has_value();
  const PolynacciRule rule = heuristic ? default_rule(L) : *config.rule;
  if (rule.weights.size() != L) throw std::invalid_argument("rule weight count must equal L");
  rule.quantizer.validate();

  const double beta = beta_L(L, kRootTol).beta;
  ParamVector params{{"L", static_cast<double>(L)},
                     {"beta", beta},
                     {"nu1", rule.quantizer.nu1},
                     {"nu2", rule.quantizer.nu2}};
  for (std::size_t i = 0; i < L; ++i) params.set("w" + std::to_string(i), rule.weights[i]);

  std::vector<double> initial(L, 0.0);
  initial[0] = x;
  PolynacciEncoding out;
  out.encoding = run_recursion(Scheme::Polynacci, std::move(params), initial, n_bits,
                               config.escape, [&](std::span<const double> u, std::size_t n) {
                                 double w = rule.weights[0] * u[0];
                                 double sum = u[0];
                                 for (std::size_t i = 1; i < L; ++i) {
                                   w += rule.weights[i] * u[i];
                                   sum += u[i];
                                 }
                                 const Bit b = flaky_q(w, rule.quantizer, n);
                                 return StepOutput{b, sum - b};
                               });

  const Trajectory& traj = out.encoding.trajectory;
  StabilityReport& rep = out.report;
  rep.beta = beta;
  rep.max_abs_state = traj.max_abs();
  rep.escaped = traj.escaped();
  rep.escape_index = traj.escape_index();
  rep.heuristic_rule = heuristic;
  const auto c = telescoping_weights(L, beta);
  const auto last = traj.state(traj.state_count() - 1);
  double w = 0.0;
  for (std::size_t j = 0; j < L; ++j) w += c[j] * last[j];
  const double cycles = static_cast<double>(traj.state_count() - 1);
  rep.residual_bound = std::abs(w) * std::pow(beta, -cycles);
  return out;
}

}  // namespace gre
