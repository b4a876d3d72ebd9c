#ifndef RICCI_CURVATURE_HPP
#define RICCI_CURVATURE_HPP

#include "ricci/metric.hpp"

namespace ricci {

/// Pointwise curvature of a warped metric.  For g = phi^2 dx^2 + psi^2 g_{S^{n-1}}
/// the two sectional curvatures are K_rad = -psi_ss/psi (planes containing the
/// axis) and K_sph = (1 - psi_s^2)/psi^2 (spherical planes); everything else is
/// assembled algebraically from them.
struct CurvatureField {
  Eigen::ArrayXd scalar;      // R
  Eigen::ArrayXd ric_radial;  // Ricci eigenvalue on the axis direction
  Eigen::ArrayXd ric_sphere;  // Ricci eigenvalue on spherical directions
  Eigen::ArrayXd ric_norm;    // |Ric|
  Eigen::ArrayXd rm_norm;     // |Rm|
  Eigen::ArrayXd ric_minus;   // magnitude of the most negative Ricci eigenvalue
  Eigen::ArrayXd sec_radial;  // K_rad
  Eigen::ArrayXd sec_sphere;  // K_sph

  double max_rm() const { return rm_norm.maxCoeff(); }
};

/// Centered 4th-order finite differences in arclength on the uniform-x grid;
/// pole values by continuous extension of the sectional curvatures.
CurvatureField curvature(const WarpedMetric& m);

/// Derivative helpers used by the flow as well (uniform x grids).
/// parity at a pole end: +1 for even reflection (phi), -1 for odd (psi).
Eigen::ArrayXd deriv_x(const Eigen::ArrayXd& f, const WarpedMetric& m, int parity);
Eigen::ArrayXd deriv_xx(const Eigen::ArrayXd& f, const WarpedMetric& m, int parity);

/// Kreiss-Oliger style 4th-difference filter damping grid-scale noise:
/// f <- f - (sigma/16) D4 f with parity-consistent ghosts.  O(h^4) on smooth
/// data; used by the flow to keep the near-pole modes stable.
void dissipate(Eigen::ArrayXd& f, const WarpedMetric& m, int parity, double sigma);

}  // namespace ricci

#endif
