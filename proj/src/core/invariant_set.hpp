#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "core/constants.hpp"
#include "core/quantizers.hpp"

namespace gre {

struct Point {
  double u = 0.0;
  double v = 0.0;
};

// Coordinates along the orthonormal eigenvectors of A = [[0,1],[1,1]]:
// Phi1 = (phi, -1)/sqrt(phi+2) (eigenvalue -1/phi) and
// Phi2 = (1, phi)/sqrt(phi+2) (eigenvalue phi).
struct EigenCoords {
  double s = 0.0;
  double t = 0.0;
};

EigenCoords to_eigen(Point p) noexcept;
Point from_eigen(EigenCoords e) noexcept;

// Largest noise margin for which the two-rectangle construction has a
// non-empty overlap: 1 / (2 phi^2 sqrt(phi+2)) ~ 0.1004.
double max_noise_margin() noexcept;

/// Positively invariant rectangle R(mu): s in [-l2, r1], t in [d1, d2 + h].
/// For admissible quantizers T(R) + B_mu(0) is contained in R.
struct InvariantRect {
  double mu = 0.0;
  // Side lengths of the construction.
  double r1 = 0.0, l1 = 0.0, r2 = 0.0, l2 = 0.0, h = 0.0, d1 = 0.0, d2 = 0.0;
  double s_min = 0.0, s_max = 0.0, t_min = 0.0, t_max = 0.0;
  Point a1_sharp, b2, c2_sharp, d1_corner;

  // Distance from p to the boundary, positive inside (the axes are
  // orthonormal, so this is Euclidean).
  double depth(Point p) const noexcept;
  bool contains(Point p, double tol = kMembershipTol) const noexcept;

  // d1 + h - d2: width of the overlap that admits a flaky threshold.
  double overlap_margin() const noexcept { return d1 + h - d2; }

  // max of u + phi v over R(mu) + B_mu(0); bounds |e_N| phi^N.
  double error_constant() const noexcept;

  // Inputs x with (x, 0) in R(mu): [phi mu sqrt(phi+2), 1 + phi mu sqrt(phi+2)].
  std::pair<double, double> seed_interval() const noexcept;
};

// Throws std::out_of_range unless 0 <= mu < max_noise_margin().
InvariantRect invariant_rect(double mu);

/// Admissible (alpha, nu) region G(mu): alpha in [alpha_min, alpha_max] and
/// nu_min(alpha) <= nu1 <= nu2 <= nu_max(alpha).
class ParamRegion {
 public:
  explicit ParamRegion(double mu);

  double mu() const noexcept { return mu_; }
  double alpha_min() const noexcept { return alpha_min_; }
  double alpha_max() const noexcept { return alpha_max_; }
  // Upper gain bound as typeset in the source formula; strictly below
  // alpha_max() for mu > 0, where the two nu branches do not yet meet.
  double alpha_max_as_printed() const noexcept;

  double nu_min(double alpha) const noexcept;
  double nu_max(double alpha) const noexcept;

  // inf{alpha : nu_max(alpha) >= y}; nu_max is strictly increasing.
  double nu_max_inverse(double y) const noexcept;
  // sup{alpha : nu_min(alpha) <= y}; empty when y < nu_min(alpha_min).
  std::optional<double> nu_min_inverse(double y) const noexcept;

  bool contains(double alpha, double nu1, double nu2, double tol = 1e-12) const noexcept;

 private:
  double mu_;
  double k_;  // mu phi sqrt(phi+2)
  double c_;  // mu phi^2 / sqrt(phi+2)
  double alpha_min_;
  double alpha_max_;
};

ParamRegion param_region(double mu);

// Where to place alpha_L in (nu_max^{-1}(nu_min(alpha)), alpha) and alpha_U in
// (alpha, alpha_U*), as fractions of the respective open intervals.
struct MarginChoice {
  double lower_fraction = 0.5;
  double upper_fraction = 0.5;
};

struct RobustnessMargin {
  double eta = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;
  double alpha_upper_star = 0.0;
};

/// Gain tolerance eta and threshold band [nu1, nu2] such that any gain within
/// eta of alpha keeps [nu1, nu2] inside the admissible band. Throws
/// std::out_of_range unless alpha_min(mu) < alpha < alpha_max(mu).
RobustnessMargin robustness_margin(double alpha, double mu, MarginChoice choice = {});

enum class InvarianceDomain { Rect, UnitSquare };

struct InvarianceViolation {
  Point point;
  Bit bit = 0;
  Point image;
  double depth = 0.0;  // depth of the image; a violation has depth < mu
};

struct InvarianceReport {
  double mu = 0.0;
  double alpha = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  InvarianceDomain domain = InvarianceDomain::Rect;
  bool parameters_admissible = false;
  std::size_t grid = 0;
  std::size_t points_checked = 0;
  std::size_t images_checked = 0;
  std::size_t violation_count = 0;
  double min_image_depth = 0.0;
  std::vector<InvarianceViolation> violations;  // first kMaxStoredViolations

  static constexpr std::size_t kMaxStoredViolations = 64;
  bool ok() const noexcept { return violation_count == 0; }
};

/// Samples a grid_density x grid_density grid over the domain and checks that
/// every admissible image T(p) keeps a mu-ball inside the domain. In the flaky
/// band both bit choices are tested.
InvarianceReport verify_invariance(const InvariantRect& rect, const QuantizerSpec& spec, double mu,
                                   std::size_t grid_density = 1000,
                                   InvarianceDomain domain = InvarianceDomain::Rect);

}  // namespace gre
