#ifndef RICCI_HEAT_HPP
#define RICCI_HEAT_HPP

#include "ricci/estimates.hpp"
#include "ricci/flow.hpp"
#include "ricci/report.hpp"

namespace ricci {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rotationally symmetric scalar field along a trajectory: one radial array
/// per covered checkpoint.  first_checkpoint indexes the trajectory
/// checkpoint carrying values[0].
struct HeatField {
  std::vector<double> times;
  std::vector<Eigen::ArrayXd> values;
  std::vector<char> domain;  // per-row Dirichlet support; empty = everywhere
  int first_checkpoint = 0;
  double ell = 0.0;  // reaction bound L(t) <= ell/t
  double c0 = 0.0;   // curvature bound |Rm| <= c0/t (0 = fitted from data)

  const Eigen::ArrayXd& at_time(double t) const;  // nearest stored slice
};

struct MoserParams {
  int n = 4;
  double p = 2.0;
  double A = 1.0;
  double B = 1.0;
  double ell = 1.0;
  double alpha_u = 1.0;  // the universal alpha of the cut-off construction
  double c1 = 1.0;       // c1(c0, n) of the cut-off construction
  double gamma = 0.95;   // only used when p < 2; needs 2 gamma^{(n+2)/p} > 1
  double r = 1.0;
  void validate() const;
};

struct MoserConstants {
  double K = 0.0;
  double T_hat = 0.0;
  enum class Case { p_ge_2, p_lt_2 } branch = Case::p_ge_2;
};

/// K1 = (4A)^{n/2p} (1+2/n)^{(n+2)^2/2p} e^{2 c1 alpha^2 (n+2)/p} for p >= 2;
/// the gamma-weighted K2 display for p < 2.  T_hat = min{r^2/4, alpha c1 r^2/4}.
MoserConstants moser_constants(const MoserParams& mp);

struct CutoffField {
  std::vector<double> times;
  std::vector<Eigen::ArrayXd> values;
  int first_checkpoint = 0;
  double r1 = 0.0, r2 = 0.0, eps = 0.0;
  double sigma_c = 0.0;  // alpha / (eps (r2-r1)^2)
  double T_hat = 0.0;    // min{r1^2, alpha c1 (r2-r1)^2}
  double worst_slack = 0.0;  // most negative margin of dphi/dt <= lap phi
  double c0_hat = 0.0;       // measured sup of t |Rm| on B(x, r2)
};

/// phi(y,t) = e^{-sigma t} eta(d_{g(t)}(x,y)) with a cubic step profile,
/// verified against the four cut-off properties on [0, T_hat).
CutoffField cutoff_construct(const Trajectory& traj, QuotientPoint x, double r1,
                             double r2, double eps, double alpha_u = 6.0,
                             double c1 = 1.0, double slack_tol = 1e-8);

/// Solve df/dt = Lap_{g(t)} f + (ell/t) f with Dirichlet conditions outside
/// the per-row domain (empty = closed/natural).  f0 lives on the first
/// checkpoint; its time must be positive whenever ell > 0.
HeatField solve_heat(const Trajectory& traj, const std::vector<char>& domain,
                     const Eigen::ArrayXd& f0, double ell);

EstimateReport moser_audit(const HeatField& h, const Trajectory& traj,
                           QuotientPoint x, double r, double p, double t,
                           const MoserParams& mp);

/// The ricci-moser preset: f = sqrt(|Ric|^2 + eps) sampled from the
/// trajectory, with the reaction bound fitted from the measured t|Rm|.
EstimateReport ricci_moser_audit(const Trajectory& traj, QuotientPoint x,
                                 double r, double p, double t,
                                 const MoserParams& mp, double eps = 1e-8);

/// Fundamental solution of the conjugate heat equation
/// Lap u - R u + du/dl = 0, integrated backward from a mollified point mass
/// at (x, t) down to l_min.
HeatField solve_conjugate_heat(const Trajectory& traj, QuotientPoint x,
                               double t, double l_min);

/// Per-row volume weights used by the radial solvers (sum approximates the
/// total volume; pole cells get the exact cubic-cone volume).
Eigen::ArrayXd radial_weights(const WarpedMetric& m);

/// Mass upper bound int G dV <= 1 + C0 (1 + t - l)^{n/2} and pointwise
/// Gaussian lower bound with the fitted minimal c1 (params["c1_fit"]).
std::pair<EstimateReport, EstimateReport> kernel_bounds_audit(
    const HeatField& G, const Trajectory& traj, const NonInflateConstants& k,
    QuotientPoint x, double t, double l);

/// Metric snapshot columns plus the field value.
void save_heat_snapshot(const WarpedMetric& m, const Eigen::ArrayXd& f,
                        const std::string& path);

}  // namespace ricci

#endif
