#include "ricci/singular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ricci {

void ClassificationParams::validate() const {
  if (!(eps0 > 0.0) || !(R_big > 0.0) || !(Lambda > 0.0) || !(K0 > 0.0) ||
      !(N0 > 0.0))
    throw parameter_error("classification thresholds must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw parameter_error("classification alpha must lie in (0,1)");
  if (alpha_bands < 8) throw parameter_error("alpha_bands too small");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::regular: return "regular";
    case Verdict::singular: return "singular";
    default: return "undetermined";
  }
}

namespace {

// Piecewise-linear lookup of ys against the increasing abscissae xs.
double lerp_lookup(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys, double x) {
  const int n = static_cast<int>(xs.size());
  if (x <= xs(0)) return ys(0);
  if (x >= xs(n - 1)) return ys(n - 1);
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (xs(mid) <= x ? lo : hi) = mid;
  }
  const double w = (x - xs(lo)) / (xs(hi) - xs(lo));
  return (1.0 - w) * ys(lo) + w * ys(hi);
}

// Gauge coordinate of the material point with arclength s on the metric m.
double gauge_of(const WarpedMetric& m, double s) {
  const Eigen::ArrayXd sa = m.arclength();
  if (s < -1e-12 || s > sa(sa.size() - 1) + 1e-12)
    throw parameter_error("point lies outside the manifold axis");
  return lerp_lookup(sa, m.grid.x, s);
}

double arclength_of(const WarpedMetric& m, double u) {
  return lerp_lookup(m.grid.x, m.arclength(), u);
}

// Local arclength cell size at the gauge coordinate u.
double cell_size(const WarpedMetric& m, double u) {
  const Eigen::ArrayXd& x = m.grid.x;
  int j = 0;
  (x - u).abs().minCoeff(&j);
  return m.phi(j) * m.grid.spacing();
}

double singular_time_or_throw(const Trajectory& traj) {
  if (traj.checkpoints.empty()) throw parameter_error("empty trajectory");
  if (!traj.singular_time_estimate)
    throw needs_singular_time_error(
        "classification needs a singular time estimate");
  return *traj.singular_time_estimate;
}

}  // namespace

std::vector<double> good_times(const Trajectory& traj, QuotientPoint x,
                               const ClassificationParams& params) {
  params.validate();
  const double T = singular_time_or_throw(traj);
  const double q = 2.0 + params.alpha * params.alpha * params.alpha;
  const double u = gauge_of(traj.front(), x.s);

  std::vector<double> accepted;
  int i = 0;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const double t = traj.times[k];
    if (!(t < T)) break;
    const WarpedMetric& m = traj.checkpoints[k];
    const double r = params.K0 * std::ldexp(1.0, i) * std::sqrt(T - t);
    const QuotientPoint pk{arclength_of(m, u), x.alpha};
    const double val = ricci_lp_ball(m, {pk, r}, q, params.alpha_bands);
    if (val <= params.eps0 * std::ldexp(1.0, -i)) {
      accepted.push_back(t);
      ++i;
    }
  }
  return accepted;
}

PointVerdict classify_point(const Trajectory& traj, QuotientPoint x,
                            const ClassificationParams& params) {
  const std::vector<double> good = good_times(traj, x, params);
  const double T = *traj.singular_time_estimate;
  const double q = 2.0 + params.alpha * params.alpha * params.alpha;
  const double u = gauge_of(traj.front(), x.s);

  PointVerdict v;
  v.point = x;

  std::vector<double> witnesses;      // good, resolvable, |Rm|^2 small
  std::vector<double> good_resolved;  // good and resolvable
  std::vector<double> scanned;        // resolvable
  bool all_scanned_violate = true;

  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const double t = traj.times[k];
    if (!(t < T)) break;
    const WarpedMetric& m = traj.checkpoints[k];
    const double r4 = 4.0 * params.R_big * std::sqrt(T - t);
    if (r4 < 4.0 * cell_size(m, u)) continue;  // below mesh resolution

    const QuotientPoint pk{arclength_of(m, u), x.alpha};
    const double rm2 = riemann_l2(m, BallSpec{pk, r4}, params.alpha_bands);
    const double ricq = ricci_lp_ball(m, {pk, r4}, q, params.alpha_bands);
    v.integrals.push_back({t, rm2, ricq});
    scanned.push_back(t);

    const bool small = rm2 <= params.eps0;
    if (!small) continue;
    all_scanned_violate = false;
    if (std::find(good.begin(), good.end(), t) != good.end())
      witnesses.push_back(t);
  }
  for (double t : scanned)
    if (std::find(good.begin(), good.end(), t) != good.end())
      good_resolved.push_back(t);

  if (!witnesses.empty()) {
    v.verdict = Verdict::regular;
    v.witness_times = witnesses;
  } else if (!good_resolved.empty()) {
    v.verdict = Verdict::singular;  // every usable good time violates
    v.witness_times = good_resolved;
  } else if (good.empty() && !scanned.empty() && all_scanned_violate) {
    v.verdict = Verdict::singular;
    v.witness_times = scanned;
  } else {
    v.verdict = Verdict::undetermined;
  }
  return v;
}

std::vector<QuotientPoint> cluster_singular(const Trajectory& traj, double t_i,
                                            const ClassificationParams& params,
                                            int i) {
  params.validate();
  if (i < 0) throw parameter_error("schedule index must be nonnegative");
  const double T = singular_time_or_throw(traj);

  size_t k = traj.times.size();
  for (size_t j = 0; j < traj.times.size(); ++j)
    if (std::abs(traj.times[j] - t_i) <= 1e-9 * (1.0 + std::abs(t_i))) k = j;
  if (k == traj.times.size())
    throw parameter_error("cluster time is not a checkpoint time");
  if (!(t_i < T))
    throw parameter_error("cluster time must precede the singular time");

  const WarpedMetric& m = traj.checkpoints[k];
  const double rc = params.Lambda * std::sqrt(T - t_i);
  const double sep =
      params.N0 * std::ldexp(1.0, i) * std::sqrt(T - t_i);
  const Eigen::ArrayXd sa = m.arclength();
  const int n = m.size();

  const CurvatureField c = curvature(m);
  QuotientMesh mesh(m, params.alpha_bands);
  const Eigen::ArrayXd dens = mesh.spread_rows(c.rm_norm.square());

  Eigen::ArrayXd integral(n);
  for (int j = 0; j < n; ++j) {
    const Eigen::ArrayXd d = fmm_distance(mesh, {sa(j), 0.0}, 2.0 * rc);
    integral(j) = region_integral(mesh, d, rc, dens);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return integral(a) > integral(b);
  });

  std::vector<QuotientPoint> centers;
  for (int j : order) {
    if (!(integral(j) > params.eps0)) break;
    bool separated = true;
    for (const QuotientPoint& p : centers)
      if (std::abs(sa(j) - p.s) < sep) separated = false;
    if (separated) centers.push_back({sa(j), 0.0});
  }
  return centers;
}

EstimateReport ct_decay_audit(const Trajectory& traj, const BallSpec& region,
                              double t_a, double t_b, double c0) {
  if (traj.checkpoints.empty()) throw parameter_error("empty trajectory");
  if (!(t_a < t_b)) throw parameter_error("decay window must be increasing");
  if (t_a < traj.times.front() - 1e-12 || t_b > traj.times.back() + 1e-12)
    throw parameter_error("window not covered by trajectory checkpoints");
  if (!(region.radius > 0.0))
    throw parameter_error("region radius must be positive");

  double sup = 0.0, t_at = t_a;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const double t = traj.times[k];
    if (t < t_a - 1e-12 || t > t_b + 1e-12) continue;
    const WarpedMetric& m = traj.checkpoints[k];
    const Eigen::ArrayXd sa = m.arclength();
    const double L = sa(sa.size() - 1);
    const double sc = region.center.s;
    if (sc < -1e-9 || sc > L + 1e-9)
      throw coverage_error("region center leaves mesh coverage");
    if ((sc - region.radius < -1e-9 && m.end0 == EndKind::boundary) ||
        (sc + region.radius > L + 1e-9 && m.end1 == EndKind::boundary))
      throw coverage_error("region leaves mesh coverage");

    const CurvatureField c = curvature(m);
    double mx = 0.0;
    for (int j = 0; j < m.size(); ++j)
      if (std::abs(sa(j) - sc) <= region.radius)
        mx = std::max(mx, c.rm_norm(j));
    const double val = (t - t_a) * mx;
    if (val > sup) {
      sup = val;
      t_at = t;
    }
  }

  EstimateReport rep = make_report("ct-decay", "ct-curvature-decay",
                                   BoundDirection::upper, sup, c0);
  rep.time = t_at;
  rep.center_s = region.center.s;
  rep.center_alpha = region.center.alpha;
  rep.radius = region.radius;
  rep.params["t_a"] = t_a;
  rep.params["t_b"] = t_b;
  return rep.finalize();
}

}  // namespace ricci
