#ifndef RICCI_FLOW_HPP
#define RICCI_FLOW_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ricci/curvature.hpp"
#include "ricci/metric.hpp"

namespace ricci {

struct singularity_crossed_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct instability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StopReason { completed, min_psi, max_rm, max_steps, instability };
const char* to_string(StopReason r);

struct FlowController {
  double cfl_fraction = 0.2;     // of the parabolic limit, must be <= 0.5
  long max_steps = 2'000'000;
  double stop_min_psi = 1e-3;    // halt when the neck closes to this
  double stop_max_rm = 1e6;      // or when |Rm| blows past this
  double checkpoint_stride = 1e-2;
  enum class RegridPolicy { none, fixed } regrid_policy = RegridPolicy::fixed;

  void validate() const;
};

struct Trajectory {
  std::vector<WarpedMetric> checkpoints;
  std::vector<double> times;
  std::optional<double> singular_time_estimate;
  StopReason stop_reason = StopReason::completed;

  const WarpedMetric& front() const { return checkpoints.front(); }
  const WarpedMetric& back() const { return checkpoints.back(); }
};

struct HypothesisReport {
  double r_min_over_time = 0.0;  // inf of scalar curvature over the run
  double lp_sup = 0.0;           // sup_t int |R|^{n/2+sigma} dV
  double sigma = 0.0;
  double L_bound = 0.0;
  std::optional<double> first_violation_time;
  bool passed = false;
};

/// Scenario catalog.  Recognized kinds: round_sphere {radius, nodes},
/// euclidean_cap {radius, nodes}, cylinder_capped {radius, length, nodes},
/// dumbbell {bulb_radius, neck_radius, length, neck_width, necks, nodes}.
WarpedMetric make_preset(const std::string& kind,
                         const std::map<std::string, double>& params);

/// Parabolic step-size limit for explicit stepping.
double cfl_dt(const WarpedMetric& m, const CurvatureField& c, double cfl_fraction);

/// One explicit Heun step of dg/dt = -2 Ric in the fixed-x gauge:
/// dphi/dt = -phi * Ric_rad, dpsi/dt = -psi * Ric_sph.
WarpedMetric step(const WarpedMetric& m, double dt);

Trajectory evolve(const WarpedMetric& m0, const FlowController& ctl);

HypothesisReport monitor_hypotheses(const Trajectory& traj, double sigma, double L);

}  // namespace ricci

#endif
