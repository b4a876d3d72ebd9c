#include "ricci/flow.hpp"

#include <cmath>

#include "ricci/quotient.hpp"

namespace ricci {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::min_psi: return "min-psi";
    case StopReason::max_rm: return "max-rm";
    case StopReason::max_steps: return "max-steps";
    case StopReason::instability: return "instability";
  }
  return "?";
}

void FlowController::validate() const {
  if (!(cfl_fraction > 0.0 && cfl_fraction <= 0.5))
    throw parameter_error("cfl_fraction must lie in (0, 0.5]");
  if (!(stop_min_psi > 0.0 && stop_max_rm > 0.0 && checkpoint_stride > 0.0))
    throw parameter_error("flow thresholds must be positive");
  if (max_steps <= 0) throw parameter_error("max_steps must be positive");
}

WarpedMetric make_preset(const std::string& kind,
                         const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  const int nodes = static_cast<int>(get("nodes", 400));
  if (kind == "round_sphere") return make_round_sphere(get("radius", 1.0), nodes);
  if (kind == "euclidean_cap") return make_euclidean_cap(get("radius", 1.0), nodes);
  if (kind == "cylinder_capped")
    return make_cylinder_capped(get("radius", 1.0), get("length", 8.0), nodes);
  if (kind == "dumbbell")
    return make_dumbbell(get("bulb_radius", 1.0), get("neck_radius", 0.2),
                         get("length", 8.0), get("neck_width", 0.6),
                         static_cast<int>(get("necks", 1)), nodes);
  throw parameter_error("unknown preset kind: " + kind);
}

double cfl_dt(const WarpedMetric& m, const CurvatureField& c, double cfl_fraction) {
  const double h = m.grid.spacing();
  const double mesh = m.phi.minCoeff() * h;
  const double rm = c.max_rm();
  double dt = cfl_fraction * mesh * mesh;
  if (rm > 0.0) dt = std::min(dt, cfl_fraction / rm);
  return dt;
}

namespace {

struct Tendency {
  Eigen::ArrayXd phi_t, psi_t;
};

Tendency tendency(const WarpedMetric& m) {
  const CurvatureField c = curvature(m);
  Tendency k;
  k.phi_t = -m.phi * c.ric_radial;
  k.psi_t = -m.psi * c.ric_sphere;
  return k;
}

void check_state(const WarpedMetric& m) {
  const int n = m.size();
  if (!m.phi.allFinite() || !m.psi.allFinite())
    throw instability_error("non-finite metric after step");
  for (int i = 1; i + 1 < n; ++i)
    if (!(m.psi(i) > 0.0))
      throw singularity_crossed_error("psi reached zero in the interior");
  if ((m.phi <= 0.0).any())
    throw instability_error("phi lost positivity");
}

void pin_poles(WarpedMetric& m) {
  // psi = 0 at poles, and phi(pole) = psi_x(pole) so the geometric slope
  // psi_s stays exactly 1 there (otherwise a cone mode self-amplifies).
  const int n = m.size();
  const double h = m.grid.spacing();
  if (m.end0 == EndKind::pole) {
    m.psi(0) = 0.0;
    m.phi(0) = (16.0 * m.psi(1) - 2.0 * m.psi(2)) / (12.0 * h);
  }
  if (m.end1 == EndKind::pole) {
    m.psi(n - 1) = 0.0;
    m.phi(n - 1) = (16.0 * m.psi(n - 2) - 2.0 * m.psi(n - 3)) / (12.0 * h);
  }
}

}  // namespace

WarpedMetric step(const WarpedMetric& m, double dt) {
  if (dt == 0.0) return m;
  if (!(dt > 0.0)) throw parameter_error("step: dt must be nonnegative");
  const Tendency k1 = tendency(m);
  WarpedMetric mid = m;
  mid.phi += dt * k1.phi_t;
  mid.psi += dt * k1.psi_t;
  pin_poles(mid);
  check_state(mid);
  const Tendency k2 = tendency(mid);
  WarpedMetric out = m;
  out.phi += 0.5 * dt * (k1.phi_t + k2.phi_t);
  out.psi += 0.5 * dt * (k1.psi_t + k2.psi_t);
  out.time = m.time + dt;
  // grid-scale filter; keeps the 1/psi^2 pole modes from self-amplifying
  dissipate(out.phi, out, +1, 0.5);
  dissipate(out.psi, out, -1, 0.5);
  pin_poles(out);
  check_state(out);
  return out;
}

namespace {

double neck_ratio(const WarpedMetric& m, const WarpedMetric& m0) {
  double ratio = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < m.size(); ++i)
    if (m0.psi(i) > 0.0) ratio = std::min(ratio, m.psi(i) / m0.psi(i));
  return ratio;
}

// Least-squares zero crossing of y(t) fit linearly over the samples.
std::optional<double> fit_zero(const std::vector<double>& t,
                               const std::vector<double>& y) {
  const int n = static_cast<int>(t.size());
  if (n < 3) return std::nullopt;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int i = 0; i < n; ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) return std::nullopt;
  const double slope = (n * sty - st * sy) / denom;
  const double icpt = (sy - slope * st) / n;
  if (!(slope < 0.0)) return std::nullopt;
  const double hit = -icpt / slope;
  return hit > t.back() ? std::optional<double>(hit) : std::nullopt;
}

}  // namespace

Trajectory evolve(const WarpedMetric& m0, const FlowController& ctl) {
  ctl.validate();
  m0.validate();
  Trajectory traj;
  traj.checkpoints.push_back(m0);
  traj.times.push_back(m0.time);

  WarpedMetric m = m0;
  double next_checkpoint = m.time + ctl.checkpoint_stride;
  StopReason reason = StopReason::max_steps;
  // Squared normalized neck ratio per checkpoint; its decay is asymptotically
  // linear for both shrinking spheres and neckpinches.
  std::vector<double> cp_t{m.time}, cp_r2{1.0};

  for (long k = 0; k < ctl.max_steps; ++k) {
    CurvatureField c = curvature(m);
    if (c.max_rm() > ctl.stop_max_rm) {
      reason = StopReason::max_rm;
      break;
    }
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < m.size(); ++i) mn = std::min(mn, m.psi(i));
    if (mn < ctl.stop_min_psi) {
      reason = StopReason::min_psi;
      break;
    }
    double dt = cfl_dt(m, c, ctl.cfl_fraction);
    if (m.time < next_checkpoint && m.time + dt > next_checkpoint)
      dt = next_checkpoint - m.time;
    bool advanced = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      try {
        m = step(m, dt);
        advanced = true;
        break;
      } catch (const singularity_crossed_error&) {
        dt *= 0.5;
      } catch (const instability_error&) {
        dt *= 0.5;
      }
    }
    if (!advanced) {
      reason = StopReason::instability;
      break;
    }
    if (m.time >= next_checkpoint - 1e-14) {
      traj.checkpoints.push_back(m);
      traj.times.push_back(m.time);
      const double rho = neck_ratio(m, m0);
      cp_t.push_back(m.time);
      cp_r2.push_back(rho * rho);
      next_checkpoint += ctl.checkpoint_stride;
    }
  }

  if (traj.times.back() != m.time) {
    traj.checkpoints.push_back(m);
    traj.times.push_back(m.time);
    const double rho = neck_ratio(m, m0);
    cp_t.push_back(m.time);
    cp_r2.push_back(rho * rho);
  }
  traj.stop_reason = reason;

  const int fitn = std::min<int>(10, static_cast<int>(cp_t.size()));
  std::vector<double> ft(cp_t.end() - fitn, cp_t.end());
  std::vector<double> fy(cp_r2.end() - fitn, cp_r2.end());
  traj.singular_time_estimate = fit_zero(ft, fy);
  return traj;
}

HypothesisReport monitor_hypotheses(const Trajectory& traj, double sigma, double L) {
  if (traj.checkpoints.empty()) throw parameter_error("empty trajectory");
  HypothesisReport rep;
  rep.sigma = sigma;
  rep.L_bound = L;
  rep.r_min_over_time = std::numeric_limits<double>::infinity();
  rep.lp_sup = 0.0;
  const double q = 0.5 * traj.front().dim + sigma;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const WarpedMetric& m = traj.checkpoints[k];
    const CurvatureField c = curvature(m);
    const double rmin = c.scalar.minCoeff();
    const double lp = pole_ball_integral(m, c.scalar.abs().pow(q),
                                         std::numeric_limits<double>::infinity());
    rep.r_min_over_time = std::min(rep.r_min_over_time, rmin);
    rep.lp_sup = std::max(rep.lp_sup, lp);
    if (!rep.first_violation_time && (rmin < -1.0 || lp > L))
      rep.first_violation_time = traj.times[k];
  }
  rep.passed = rep.r_min_over_time >= -1.0 && rep.lp_sup <= L;
  return rep;
}

}  // namespace ricci
