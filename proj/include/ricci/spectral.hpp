#ifndef RICCI_SPECTRAL_HPP
#define RICCI_SPECTRAL_HPP

#include <vector>

#include "ricci/quotient.hpp"
#include "ricci/report.hpp"

namespace ricci {

struct SobolevConstants {
  double A = 1.0;
  double B = 1.0;
  void validate() const;  // A > 0, B >= 1
};

struct EigenResult {
  double lambda1 = 0.0;
  Eigen::ArrayXd eigenfunction;
  double residual = 0.0;
  int iterations = 0;
};

struct convergence_error : std::runtime_error {
  EigenResult last;
  convergence_error(const std::string& msg, EigenResult it)
      : std::runtime_error(msg), last(std::move(it)) {}
};

/// First Dirichlet eigenvalue of the Laplacian on a pole-centered geodesic
/// ball of radius r: the radial Sturm-Liouville problem
///   -(psi^3 u')' = lambda psi^3 u,  u'(0) = 0,  u(r) = 0,
/// solved by cell-centered finite volumes + inverse iteration.
EigenResult lambda1_pole_ball(const WarpedMetric& m, double r);

/// First Dirichlet eigenvalue on an arbitrary node-indicator domain of the
/// quotient mesh (variational; no radial symmetry assumed).
EigenResult lambda1_domain(const QuotientMesh& mesh, const std::vector<char>& domain);

struct DomainFamily {
  enum class Kind { concentric_balls } kind = Kind::concentric_balls;
  int count = 8;
};

struct FaberKrahnResult {
  double value = 0.0;        // min over the family of Vol(U)^{2/n} lambda1(U)
  double best_radius = 0.0;  // the minimizing ball
};

FaberKrahnResult faber_krahn(const WarpedMetric& m, const BallSpec& region,
                             const DomainFamily& family, int alpha_bands = 96);

/// Radial Gaussian test bumps exp(-((s-s0)/w)^2) for the Sobolev audit.
struct BumpFamily {
  std::vector<double> centers_s;
  std::vector<double> widths;
};

/// Checks (int |u|^{2n/(n-2)})^{(n-2)/n} <= A int(|grad u|^2 + (R/4)u^2) + B int u^2
/// over the family; reports the worst margin.
EstimateReport sobolev_audit(const WarpedMetric& m, const SobolevConstants& c,
                             const BumpFamily& family);

}  // namespace ricci

#endif
