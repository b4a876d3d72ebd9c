#ifndef RICCI_SINGULAR_HPP
#define RICCI_SINGULAR_HPP

#include "ricci/flow.hpp"
#include "ricci/report.hpp"

namespace ricci {

struct needs_singular_time_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct coverage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thresholds and schedules of the classification pipeline.  All schedules
/// are geometric with ratio 2: the good-time scan demands
/// int |Ric|^{2+alpha^3} <= eps0 2^{-i} on balls of radius K0 2^i sqrt(T-t),
/// and cluster centers are kept N0 2^i sqrt(T-t) apart.
struct ClassificationParams {
  double eps0 = 0.1;     // |Rm|^2 smallness threshold
  double R_big = 1.0;    // regularity balls have radius 4 R_big sqrt(T-t)
  double alpha = 0.05;   // Ricci integrals carry the exponent 2 + alpha^3
  double Lambda = 1.0;   // cluster ball multiplier
  double K0 = 1.0;       // first rung of the good-time ball schedule
  double N0 = 2.0;       // first rung of the cluster separation schedule
  int alpha_bands = 96;  // quotient mesh resolution for ball integrals

  void validate() const;
};

enum class Verdict { regular, singular, undetermined };
const char* to_string(Verdict v);

struct PointIntegral {
  double t = 0.0;
  double rm2 = 0.0;   // int_{B(x, 4 R_big sqrt(T-t))} |Rm|^2
  double ricq = 0.0;  // same ball, |Ric|^{2 + alpha^3}
};

struct PointVerdict {
  QuotientPoint point;
  Verdict verdict = Verdict::undetermined;
  std::vector<double> witness_times;
  std::vector<PointIntegral> integrals;  // one row per resolvable checkpoint
};

/// Times t_i < T whose balls B(x, K_i sqrt(T-t_i)) carry a small
/// |Ric|^{2+alpha^3} integral; the rung index advances on each acceptance so
/// the accepted subsequence realizes K_i -> infinity, eps_i -> 0.
///
/// The point x is a material point: its s coordinate refers to the first
/// checkpoint and is transported along the fixed-x gauge.
/// Throws needs_singular_time_error without a singular time estimate.
std::vector<double> good_times(const Trajectory& traj, QuotientPoint x,
                               const ClassificationParams& params);

/// Regular iff some good time also has int |Rm|^2 <= eps0 at scale
/// 4 R_big sqrt(T-t); singular iff all good times violate it (all scanned
/// times when no good time exists); undetermined when the checkpoint
/// resolution cannot support the verdict (ball under 4 mesh cells).
PointVerdict classify_point(const Trajectory& traj, QuotientPoint x,
                            const ClassificationParams& params);

/// Greedy cluster centers at the checkpoint time t_i: axis points scanned by
/// descending |Rm|^2 ball integral at scale Lambda sqrt(T-t_i), accepted when
/// the integral exceeds eps0 and the distance to every previously accepted
/// center is at least N0 2^i sqrt(T-t_i).  Returned in acceptance order with
/// s in the g(t_i) arclength.
std::vector<QuotientPoint> cluster_singular(const Trajectory& traj, double t_i,
                                            const ClassificationParams& params,
                                            int i = 0);

/// sup over checkpoints in [t_a, t_b] of (t - t_a) sup_{B} |Rm|, the region
/// read per checkpoint in that metric's arclength; pass iff <= c0.
EstimateReport ct_decay_audit(const Trajectory& traj, const BallSpec& region,
                              double t_a, double t_b, double c0 = 1.0);

}  // namespace ricci

#endif
