#ifndef RICCI_ESTIMATES_HPP
#define RICCI_ESTIMATES_HPP

#include "ricci/flow.hpp"
#include "ricci/report.hpp"
#include "ricci/spectral.hpp"

namespace ricci {

struct NonInflateConstants {
  double c1 = 1.0;      // kernel lower-bound constant
  double c2 = 0.0;      // kernel exponent constant
  double C0 = 1.0;      // mass upper-bound constant
  double alpha_J = 0.0; // J(s) = exp(-alpha_J - s beta_J - s sup R^-)
  double beta_J = 0.0;
  double B_low = 0.0;   // R >= -B_low at time zero
  double E = 0.0;       // int |R|^{n/2} bound
  double kappa = 1.0;   // non-collapse constant
  void validate() const;
};

struct SpaceTimeWindow {
  QuotientPoint center;
  double Y = 1.0;
  double S = 0.0;
  double V = 0.0;
  double alpha = 0.05;
  void validate() const;  // Y >= 1, S < V, Y sqrt(V-S) <= 1, alpha in (0,1/12)
};

/// r0 = min(1/(A^{(n+2s)/4s} L^{1/2s}), 1).
double noncollapse_threshold(double A, double L, double sigma, int n);

/// Restricted-radius volume lower bound (1/(2^{n+4}A + 4B))^{n/2} r^n.
double noncollapse_bound(const SobolevConstants& c, int n, double r);

/// General form with the L-dependent denominator 1 - (A/4) L^{2/(n+2s)} r^{4s/(n+2s)}.
double noncollapse_bound_general(const SobolevConstants& c, int n, double r,
                                 double L, double sigma);

std::vector<EstimateReport> noncollapse_audit(const WarpedMetric& m,
                                              const SobolevConstants& c, double L,
                                              double sigma,
                                              const std::vector<QuotientPoint>& centers,
                                              const std::vector<double>& radii);

double noninflate_bound(const NonInflateConstants& k, int n, double r, double t0);

std::vector<EstimateReport> noninflate_audit(const Trajectory& traj,
                                             const std::vector<QuotientPoint>& centers,
                                             const std::vector<double>& radii,
                                             double sigma0 = 0.0,
                                             double sigma1 = M_PI * M_PI / 2.0);

/// Space-time Ricci integral bound; fits the empirical exponent e* of
/// lhs(V - S) across a ladder of start times (params["e_star"]).
EstimateReport spacetime_ricci_audit(const Trajectory& traj, const SpaceTimeWindow& w);

EstimateReport ricci4_window_audit(const Trajectory& traj, QuotientPoint p,
                                   double r, double V, double s,
                                   double alpha = 0.05);

std::vector<EstimateReport> volume_comparison_audit(const WarpedMetric& m,
                                                    QuotientPoint center, double p,
                                                    const std::vector<double>& r_ladder,
                                                    int alpha_bands = 128);

/// Connected components of the annulus {r_in <= d(center,.) <= r_out}.
int annulus_components(const WarpedMetric& m, QuotientPoint center, double r_in,
                       double r_out, int alpha_bands = 128);

}  // namespace ricci

#endif
