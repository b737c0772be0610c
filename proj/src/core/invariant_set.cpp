#include "core/invariant_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "core/framework.hpp"

namespace gre {

namespace {

const double kR = kSqrtPhiPlus2;

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu < max_noise_margin())) {
    throw std::out_of_range("noise margin mu=" + std::to_string(mu) + " outside [0, " +
                            std::to_string(max_noise_margin()) + ")");
  }
}

}  // namespace

EigenCoords to_eigen(Point p) noexcept {
  return {(kPhi * p.u - p.v) / kR, (p.u + kPhi * p.v) / kR};
}

Point from_eigen(EigenCoords e) noexcept {
  return {(kPhi * e.s + e.t) / kR, (-e.s + kPhi * e.t) / kR};
}

double max_noise_margin() noexcept { return 1.0 / (2.0 * kPhi * kPhi * kR); }

double InvariantRect::depth(Point p) const noexcept {
  const EigenCoords e = to_eigen(p);
  return std::min({e.s - s_min, s_max - e.s, e.t - t_min, t_max - e.t});
}

bool InvariantRect::contains(Point p, double tol) const noexcept { return depth(p) >= -tol; }

double InvariantRect::error_constant() const noexcept {
  // u + phi v = sqrt(phi+2) t, and |(1, phi)| = sqrt(phi+2).
  double best = -std::numeric_limits<double>::infinity();
  for (Point c : {a1_sharp, b2, c2_sharp, d1_corner}) best = std::max(best, c.u + kPhi * c.v);
  return best + mu * kR;
}

std::pair<double, double> InvariantRect::seed_interval() const noexcept {
  // (x, 0) has s = phi x / r and t = x / r.
  return {std::max(0.0, t_min * kR), s_max * kR / kPhi};
}

InvariantRect invariant_rect(double mu) {
  require_mu(mu);
  const double phi2 = kPhi * kPhi;
  InvariantRect R;
  R.mu = mu;
  R.r1 = kPhi / kR + phi2 * mu;
  R.l1 = phi2 / kR + phi2 * mu;
  R.r2 = 2.0 * kPhi / kR + phi2 * mu;
  R.l2 = 1.0 / kR + phi2 * mu;
  R.h = kPhi / kR - 2.0 * kPhi * mu;
  R.d1 = kPhi * mu;
  R.d2 = 1.0 / kR + kPhi * mu;
  R.s_min = -R.l2;
  R.s_max = R.r1;
  R.t_min = R.d1;
  R.t_max = R.d2 + R.h;
  R.a1_sharp = from_eigen({R.s_min, R.t_min});
  R.b2 = from_eigen({R.s_min, R.t_max});
  R.c2_sharp = from_eigen({R.s_max, R.t_max});
  R.d1_corner = from_eigen({R.s_max, R.t_min});
  return R;
}

ParamRegion::ParamRegion(double mu) : mu_(mu) {
  require_mu(mu);
  k_ = mu * kPhi * kR;
  c_ = mu * kPhi * kPhi / kR;
  alpha_min_ = 1.0 + 2.0 * k_;
  // Gain at which the two nu branches meet.
  alpha_max_ = 3.0 - 10.0 * k_ / (1.0 + 4.0 * k_);
}

double ParamRegion::alpha_max_as_printed() const noexcept {
  return 3.0 - 10.0 * k_ / (1.0 + 4.0 * mu_ * kR);
}

double ParamRegion::nu_min(double alpha) const noexcept {
  if (alpha <= kPhi) return 1.0 + k_;
  const double pp2 = kPhi + 2.0;
  return alpha * ((kPhi + 1.0) / pp2 + 2.0 * c_) + ((1.0 - kPhi) / pp2 - c_);
}

double ParamRegion::nu_max(double alpha) const noexcept {
  if (alpha <= kPhi) return alpha - k_;
  const double pp2 = kPhi + 2.0;
  return alpha * (1.0 / pp2 - 2.0 * c_) + ((1.0 + 2.0 * kPhi) / pp2 + c_);
}

double ParamRegion::nu_max_inverse(double y) const noexcept {
  if (y <= nu_max(kPhi)) return y + k_;
  const double pp2 = kPhi + 2.0;
  return (y - ((1.0 + 2.0 * kPhi) / pp2 + c_)) / (1.0 / pp2 - 2.0 * c_);
}

std::optional<double> ParamRegion::nu_min_inverse(double y) const noexcept {
  if (y < 1.0 + k_) return std::nullopt;
  const double pp2 = kPhi + 2.0;
  const double a = (y - ((1.0 - kPhi) / pp2 - c_)) / ((kPhi + 1.0) / pp2 + 2.0 * c_);
  return std::max(a, kPhi);
}

bool ParamRegion::contains(double alpha, double nu1, double nu2, double tol) const noexcept {
  return alpha >= alpha_min_ - tol && alpha <= alpha_max_ + tol && nu1 <= nu2 &&
         nu1 >= nu_min(alpha) - tol && nu2 <= nu_max(alpha) + tol;
}

ParamRegion param_region(double mu) { return ParamRegion(mu); }

RobustnessMargin robustness_margin(double alpha, double mu, MarginChoice choice) {
  const ParamRegion region(mu);
  if (!(alpha > region.alpha_min() && alpha < region.alpha_max())) {
    throw std::out_of_range("alpha=" + std::to_string(alpha) + " outside open interval (" +
                            std::to_string(region.alpha_min()) + ", " +
                            std::to_string(region.alpha_max()) + ")");
  }
  auto in_open_unit = [](double f) { return f > 0.0 && f < 1.0; };
  if (!in_open_unit(choice.lower_fraction) || !in_open_unit(choice.upper_fraction)) {
    throw std::invalid_argument("margin fractions must lie in (0, 1)");
  }

  RobustnessMargin m;
  const double lo = region.nu_max_inverse(region.nu_min(alpha));
  m.alpha_lower = lo + choice.lower_fraction * (alpha - lo);
  m.nu2 = region.nu_max(m.alpha_lower);
  // nu_max(alpha_L) >= nu_min(alpha_min), so the inverse exists.
  m.alpha_upper_star = std::min(region.alpha_max(), *region.nu_min_inverse(m.nu2));
  m.alpha_upper = alpha + choice.upper_fraction * (m.alpha_upper_star - alpha);
  m.nu1 = region.nu_min(m.alpha_upper);
  m.eta = std::min(alpha - m.alpha_lower, m.alpha_upper - alpha);
  return m;
}

InvarianceReport verify_invariance(const InvariantRect& rect, const QuantizerSpec& spec, double mu,
                                   std::size_t grid_density, InvarianceDomain domain) {
  if (grid_density < 2) throw std::invalid_argument("grid_density must be >= 2");
  spec.validate();

  InvarianceReport report;
  report.mu = mu;
  report.alpha = spec.alpha;
  report.nu1 = spec.nu1;
  report.nu2 = spec.nu2;
  report.domain = domain;
  report.grid = grid_density;
  report.min_image_depth = std::numeric_limits<double>::infinity();
  if (mu >= 0.0 && mu < max_noise_margin()) {
    report.parameters_admissible = ParamRegion(mu).contains(spec.alpha, spec.nu1, spec.nu2);
  }

  const bool square = domain == InvarianceDomain::UnitSquare;
  auto depth = [&](Point p) {
    return square ? std::min({p.u, 1.0 - p.u, p.v, 1.0 - p.v}) : rect.depth(p);
  };

  const auto xs = square ? uniform_grid(0.0, 1.0, grid_density)
                         : uniform_grid(rect.s_min, rect.s_max, grid_density);
  const auto ys = square ? uniform_grid(0.0, 1.0, grid_density)
                         : uniform_grid(rect.t_min, rect.t_max, grid_density);

  for (double a : xs) {
    for (double b : ys) {
      const Point p = square ? Point{a, b} : from_eigen({a, b});
      const double w = p.u + spec.alpha * p.v;
      const bool can_zero = w < spec.nu2;
      const bool can_one = w >= spec.nu1;
      ++report.points_checked;
      for (Bit bit : {Bit{0}, Bit{1}}) {
        if ((bit == 0 && !can_zero) || (bit == 1 && !can_one)) continue;
        const Point image{p.v, p.u + p.v - bit};
        const double d = depth(image);
        ++report.images_checked;
        report.min_image_depth = std::min(report.min_image_depth, d);
        if (d < mu - kMembershipTol) {
          ++report.violation_count;
          if (report.violations.size() < InvarianceReport::kMaxStoredViolations) {
            report.violations.push_back({p, bit, image, d});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace gre
