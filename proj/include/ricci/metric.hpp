#ifndef RICCI_METRIC_HPP
#define RICCI_METRIC_HPP

#include <string>

#include "ricci/grid.hpp"

namespace ricci {

enum class EndKind { pole, boundary };

/// Rotationally symmetric metric g = phi(x)^2 dx^2 + psi(x)^2 g_{S^{n-1}}
/// sampled on a fixed grid.  psi vanishes at pole ends and is positive in
/// the interior; phi is positive everywhere.
struct WarpedMetric {
  Grid grid;
  Eigen::ArrayXd phi;
  Eigen::ArrayXd psi;
  int dim = 4;
  double time = 0.0;
  EndKind end0 = EndKind::pole;
  EndKind end1 = EndKind::pole;

  int size() const { return grid.size(); }

  /// Arclength s(x) = \int_0^x phi, s(0) = 0, by composite trapezoid.
  Eigen::ArrayXd arclength() const;
  double axis_length() const;

  /// Throws invalid_metric_error / degenerate_pole_error.  pole_tol bounds
  /// the allowed deviation of |dpsi/ds| from 1 at pole ends.
  void validate(double pole_tol = 1e-2) const;

  /// max_e | |psi_s| - 1 | over pole ends (smooth-closure diagnostic).
  double pole_slope_error() const;
};

/// g -> C*g: phi, psi scaled by sqrt(C), time relabeled C*t.
WarpedMetric rescale(const WarpedMetric& m, double C);

/// Plain-text snapshot: header (n, node_count, time) + columns x phi psi,
/// 17 significant digits.
void save_snapshot(const WarpedMetric& m, const std::string& path);
WarpedMetric load_snapshot(const std::string& path);

// -- presets ---------------------------------------------------------------

WarpedMetric make_round_sphere(double radius, int nodes);
/// Euclidean disk of radius `radius` in R^4 (pole at x=0, boundary at x=1).
WarpedMetric make_euclidean_cap(double radius, int nodes);
/// Two spherical caps of radius `radius` joined by a cylinder; total axis
/// length `length` (must exceed pi*radius comfortably).
WarpedMetric make_cylinder_capped(double radius, double length, int nodes);
/// Capped cylinder of bulb radius with `necks` Gaussian neck(s) of radius
/// neck_radius and width neck_width.
WarpedMetric make_dumbbell(double bulb_radius, double neck_radius, double length,
                           double neck_width, int necks, int nodes);

}  // namespace ricci

#endif
