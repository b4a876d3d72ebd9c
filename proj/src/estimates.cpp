#include "ricci/estimates.hpp"

#include <cmath>
#include <functional>

#include "ricci/curvature.hpp"

namespace ricci {

void NonInflateConstants::validate() const {
  if (!(c1 > 0.0 && C0 > 0.0 && kappa > 0.0))
    throw parameter_error("non-inflate constants c1, C0, kappa must be positive");
  if (!(E >= 0.0 && B_low >= 0.0))
    throw parameter_error("non-inflate constants E, B_low must be nonnegative");
}

void SpaceTimeWindow::validate() const {
  if (!(Y >= 1.0)) throw parameter_error("window Y must be >= 1");
  if (!(S < V)) throw parameter_error("window needs S < V");
  if (!(Y * std::sqrt(V - S) <= 1.0 + 1e-12))
    throw parameter_error("window must satisfy Y sqrt(V-S) <= 1");
  if (!(alpha > 0.0 && alpha < 1.0 / 12.0))
    throw parameter_error("window exponent alpha must lie in (0, 1/12)");
}

double noncollapse_threshold(double A, double L, double sigma, int n) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw parameter_error("noncollapse sigma must lie in (0,1)");
  if (!(A > 0.0 && L > 0.0)) throw parameter_error("A, L must be positive");
  const double v =
      1.0 / (std::pow(A, (n + 2.0 * sigma) / (4.0 * sigma)) *
             std::pow(L, 1.0 / (2.0 * sigma)));
  return std::min(v, 1.0);
}

double noncollapse_bound(const SobolevConstants& c, int n, double r) {
  return std::pow(1.0 / (std::pow(2.0, n + 4) * c.A + 4.0 * c.B), 0.5 * n) *
         std::pow(r, n);
}

double noncollapse_bound_general(const SobolevConstants& c, int n, double r,
                                 double L, double sigma) {
  const double q = 0.25 * c.A *
                   std::pow(L, 2.0 / (n + 2.0 * sigma)) *
                   std::pow(r, 4.0 * sigma / (n + 2.0 * sigma));
  if (!(q < 1.0))
    throw parameter_error("noncollapse general form undefined: (A/4) L^... r^... >= 1");
  const double At = c.A / (1.0 - q);
  const double Bt = c.B / (1.0 - q);
  return std::pow(1.0 / (std::pow(2.0, n + 3) * At + 2.0 * Bt * r * r), 0.5 * n) *
         std::pow(r, n);
}

std::vector<EstimateReport> noncollapse_audit(
    const WarpedMetric& m, const SobolevConstants& c, double L, double sigma,
    const std::vector<QuotientPoint>& centers, const std::vector<double>& radii) {
  c.validate();
  const double r0 = noncollapse_threshold(c.A, L, sigma, m.dim);
  const double q = 0.5 * m.dim + sigma;
  std::vector<EstimateReport> out;
  for (const auto& ctr : centers) {
    for (double r : radii) {
      EstimateReport rep = make_report("noncollapse", "volume-lower-bound",
                                       BoundDirection::lower, 0.0, 0.0);
      rep.center_s = ctr.s;
      rep.center_alpha = ctr.alpha;
      rep.radius = r;
      rep.time = m.time;
      rep.params["A"] = c.A;
      rep.params["B"] = c.B;
      rep.params["L"] = L;
      rep.params["sigma"] = sigma;
      rep.params["r0"] = r0;
      if (r > r0) {
        rep.skipped = true;
        rep.note = "radius exceeds the admissible threshold";
        out.push_back(rep.finalize());
        continue;
      }
      const double lball = scalar_lp(m, q, BallSpec{ctr, r});
      rep.params["scalar_lp_ball"] = lball;
      if (lball > L) {
        rep.skipped = true;
        rep.note = "ball scalar-curvature integral exceeds L";
        out.push_back(rep.finalize());
        continue;
      }
      rep.lhs = ball_volume(m, {ctr, r}).volume;
      rep.rhs = noncollapse_bound(c, m.dim, r);
      out.push_back(rep.finalize());
    }
  }
  return out;
}

double noninflate_bound(const NonInflateConstants& k, int n, double r, double t0) {
  k.validate();
  if (!(r > 0.0 && r < std::sqrt(t0)))
    throw parameter_error("noninflate bound requires r in (0, sqrt(t0))");
  const double J = std::exp(-k.alpha_J - t0 * k.beta_J - t0 * k.B_low);
  const double inner =
      2.0 * k.c2 + 2.0 * std::exp(2.0 * k.B_low * r * r / n) *
                       std::pow(k.E, 2.0 / n) / (3.0 * std::pow(k.kappa, 2.0 / n));
  return (1.0 + k.C0 * std::pow(1.0 + r * r, 0.5 * n)) / (k.c1 * J) *
         std::exp(inner) * std::pow(r, n);
}

std::vector<EstimateReport> noninflate_audit(const Trajectory& traj,
                                             const std::vector<QuotientPoint>& centers,
                                             const std::vector<double>& radii,
                                             double sigma0, double sigma1) {
  if (traj.checkpoints.empty()) throw parameter_error("empty trajectory");
  std::vector<EstimateReport> out;
  double sup_ratio = 0.0;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const WarpedMetric& m = traj.checkpoints[k];
    for (const auto& ctr : centers) {
      for (double r : radii) {
        const double ratio =
            ball_volume(m, {ctr, r}).volume / std::pow(r, m.dim);
        sup_ratio = std::max(sup_ratio, ratio);
        EstimateReport up = make_report("noninflate", "volume-ratio-upper",
                                        BoundDirection::upper, ratio, sigma1);
        EstimateReport lo = make_report("noninflate-lower", "volume-ratio-lower",
                                        BoundDirection::lower, ratio, sigma0);
        for (EstimateReport* rp : {&up, &lo}) {
          rp->time = traj.times[k];
          rp->center_s = ctr.s;
          rp->center_alpha = ctr.alpha;
          rp->radius = r;
          rp->params["sigma0"] = sigma0;
          rp->params["sigma1"] = sigma1;
        }
        out.push_back(up.finalize());
        out.push_back(lo.finalize());
      }
    }
  }
  EstimateReport fit = make_report("noninflate-fitted", "volume-ratio-upper",
                                   BoundDirection::upper, sup_ratio, sigma1);
  fit.params["fitted_sigma1"] = sup_ratio;
  out.push_back(fit.finalize());
  return out;
}

namespace {

// Time integrand of the space-time Ricci bound at checkpoint index k.
double st_integrand(const Trajectory& traj, size_t k, QuotientPoint p, double r,
                    double q) {
  if (!(r > 0.0)) return 0.0;
  return ricci_lp_ball(traj.checkpoints[k], {p, r}, q);
}

// Trapezoid of F over checkpoint times restricted to [S, V]; endpoint values
// by linear interpolation in time of the integrand.
double time_integral(const Trajectory& traj, double S, double V,
                     const std::function<double(size_t, double)>& F) {
  const auto& t = traj.times;
  if (t.front() > S + 1e-12 || t.back() < V - 1e-12)
    throw parameter_error("window not covered by trajectory checkpoints");
  std::vector<double> ts, gs;
  auto value_at = [&](double tt) {
    size_t a = 0;
    while (a + 2 < t.size() && t[a + 1] <= tt) ++a;
    const size_t b = a + 1;
    const double fa = F(a, tt), fb = F(b, tt);
    const double u = (tt - t[a]) / (t[b] - t[a]);
    return (1 - u) * fa + u * fb;
  };
  ts.push_back(S);
  gs.push_back(value_at(S));
  for (size_t k = 0; k < t.size(); ++k)
    if (t[k] > S + 1e-14 && t[k] < V - 1e-14) {
      ts.push_back(t[k]);
      gs.push_back(F(k, t[k]));
    }
  ts.push_back(V);
  gs.push_back(value_at(V));
  double acc = 0.0;
  for (size_t i = 0; i + 1 < ts.size(); ++i)
    acc += 0.5 * (gs[i] + gs[i + 1]) * (ts[i + 1] - ts[i]);
  return acc;
}

}  // namespace

EstimateReport spacetime_ricci_audit(const Trajectory& traj, const SpaceTimeWindow& w) {
  w.validate();
  const double q = 2.0 + w.alpha * w.alpha * w.alpha;
  auto lhs_for = [&](double S) {
    return time_integral(traj, S, w.V, [&](size_t k, double tt) {
      const double r = w.Y * std::sqrt(std::max(w.V - tt, 0.0));
      return st_integrand(traj, k, w.center, r, q);
    });
  };
  const double lhs = lhs_for(w.S);
  const double expo = 1.0 + w.alpha / 16.0;
  EstimateReport rep = make_report("spacetime-ricci", "spacetime-ricci-integral",
                                   BoundDirection::upper, lhs, 0.0);
  rep.time = w.V;
  rep.center_s = w.center.s;
  rep.center_alpha = w.center.alpha;
  rep.params["Y"] = w.Y;
  rep.params["S"] = w.S;
  rep.params["V"] = w.V;
  rep.params["alpha"] = w.alpha;
  if (lhs <= 0.0) {
    rep.rhs = 0.0;
    rep.note = "degenerate: vanishing space-time integral";
    rep.finalize();
    rep.passed = true;
    return rep;
  }
  const double c2_hat = lhs / std::pow(w.V - w.S, expo);
  rep.params["c2_hat"] = c2_hat;
  rep.rhs = c2_hat * std::pow(w.V - w.S, expo);

  // empirical exponent across a ladder of start times
  std::vector<double> lx, ly;
  for (int j = 0; j < 6; ++j) {
    const double Sj = w.V - (w.V - w.S) * std::pow(2.0, -j);
    const double v = lhs_for(Sj);
    if (v > 0.0) {
      lx.push_back(std::log(w.V - Sj));
      ly.push_back(std::log(v));
    }
  }
  if (lx.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    rep.params["e_star"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep.finalize();
}

EstimateReport ricci4_window_audit(const Trajectory& traj, QuotientPoint p,
                                   double r, double V, double s, double alpha) {
  if (!(s > 0.0 && s < 1.0)) throw parameter_error("window scale s must lie in (0,1)");
  if (!(V - 3.0 * s > 0.0)) throw parameter_error("window requires V - 3s > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha must lie in (0,1)");

  auto window_data = [&](double ss, double& lhs, double& sup2) {
    lhs = time_integral(traj, V - 2.0 * ss, V - ss, [&](size_t k, double) {
      return st_integrand(traj, k, p, r, 4.0);
    });
    sup2 = 0.0;
    for (size_t k = 0; k < traj.times.size(); ++k) {
      if (traj.times[k] < V - 2.0 * ss - 1e-12 || traj.times[k] > V - ss + 1e-12)
        continue;
      const WarpedMetric& m = traj.checkpoints[k];
      const CurvatureField c = curvature(m);
      const Eigen::ArrayXd sr = m.arclength();
      for (int i = 0; i < m.size(); ++i)
        if (std::abs(sr(i) - p.s) <= r)
          sup2 = std::max(sup2, c.ric_norm(i) * c.ric_norm(i));
    }
  };
  double lhs, sup2;
  window_data(s, lhs, sup2);
  const double shape = std::pow(s, alpha - 1.0) + sup2 * std::pow(s, 1.0 + alpha);
  const double c1_hat = lhs / shape;

  EstimateReport rep = make_report("ricci4-window", "ricci4-window-bound",
                                   BoundDirection::upper, lhs, c1_hat * shape);
  rep.time = V;
  rep.center_s = p.s;
  rep.center_alpha = p.alpha;
  rep.radius = r;
  rep.params["s"] = s;
  rep.params["alpha"] = alpha;
  rep.params["sup_ric2"] = sup2;
  rep.params["c1_hat"] = c1_hat;
  // stability across a halved window when it stays admissible
  if (V - 1.5 * s > 0.0) {
    double lhs2, sup22;
    window_data(0.5 * s, lhs2, sup22);
    const double shape2 = std::pow(0.5 * s, alpha - 1.0) +
                          sup22 * std::pow(0.5 * s, 1.0 + alpha);
    if (shape2 > 0.0) rep.params["c1_hat_half"] = lhs2 / shape2;
  }
  return rep.finalize();
}

std::vector<EstimateReport> volume_comparison_audit(const WarpedMetric& m,
                                                    QuotientPoint center, double p,
                                                    const std::vector<double>& r_ladder,
                                                    int alpha_bands) {
  if (!(p > 0.5 * m.dim))
    throw parameter_error("volume comparison requires p > n/2");
  if (r_ladder.size() < 2) throw parameter_error("need at least two ladder radii");
  m.validate();
  const int nd = m.dim;
  const double expo = 1.0 / (2.0 * p - 1.0);
  const double a_exp = 1.0 - (nd - 1.0) / (2.0 * p - 1.0);

  QuotientMesh mesh(m, alpha_bands);
  const bool pole = is_pole_point(m, center);
  const Eigen::ArrayXd dist =
      fmm_distance(mesh, pole ? center : QuotientPoint{center.s, 0.0});
  const CurvatureField cv = curvature(m);
  const Eigen::ArrayXd ricm_p = mesh.spread_rows(cv.ric_minus.pow(p));
  const Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(mesh.node_count());

  auto vol = [&](double r) { return region_integral(mesh, dist, r, ones); };
  // boundary-sphere area ratio f(t) = Area(S(t))/t^{n-1} by central
  // differencing of ball volumes
  auto f_ratio = [&](double t) {
    const double d = 0.02 * t;
    return (vol(t + d) - vol(t - d)) / (2.0 * d) / std::pow(t, nd - 1);
  };

  // drop radii past the coverage of the mesh (cut-locus scale)
  std::vector<double> ladder;
  for (double r : r_ladder) {
    if (ball_volume_from_distance(mesh, dist, r).saturated) break;
    ladder.push_back(r);
  }

  std::vector<EstimateReport> out;
  for (size_t i = 0; i + 1 < ladder.size(); ++i) {
    const double s = ladder[i], r = ladder[i + 1];
    const double lhs =
        std::pow(f_ratio(r), expo) - std::pow(f_ratio(s), expo);
    const double ric_norm_p =
        std::pow(region_integral(mesh, dist, r, ricm_p), 1.0 / p);
    const double rhs_shape =
        std::pow(r, a_exp) * std::pow(ric_norm_p, p * expo);
    EstimateReport rep = make_report("volume-comparison", "relative-volume-bound",
                                     BoundDirection::upper, lhs, 0.0);
    rep.center_s = center.s;
    rep.center_alpha = center.alpha;
    rep.radius = r;
    rep.params["p"] = p;
    rep.params["r_inner"] = s;
    rep.params["ricci_minus_lp"] = ric_norm_p;
    if (rhs_shape > 0.0) {
      const double c2_hat = std::max(lhs, 0.0) / rhs_shape;
      rep.params["c2_hat"] = c2_hat;
      rep.rhs = c2_hat * rhs_shape;
    } else {
      rep.rhs = 0.0;  // Ric >= 0: plain monotonicity must hold
    }
    out.push_back(rep.finalize());
  }
  if (ladder.size() < r_ladder.size() && !out.empty())
    out.back().note = "ladder truncated at mesh coverage";
  return out;
}

int annulus_components(const WarpedMetric& m, QuotientPoint center, double r_in,
                       double r_out, int alpha_bands) {
  if (!(r_in < r_out)) throw parameter_error("annulus needs r_in < r_out");
  QuotientMesh mesh(m, alpha_bands);
  const bool pole = is_pole_point(m, center);
  const Eigen::ArrayXd dist =
      fmm_distance(mesh, pole ? center : QuotientPoint{center.s, 0.0});
  const int N = mesh.node_count();
  std::vector<char> in(N, 0);
  for (int i = 0; i < N; ++i)
    in[i] = dist(i) >= r_in && dist(i) <= r_out;

  std::vector<std::vector<int>> adj(N);
  for (const auto& f : mesh.faces()) {
    adj[f.a].push_back(f.b);
    adj[f.b].push_back(f.a);
  }
  std::vector<char> seen(N, 0);
  int components = 0;
  std::vector<int> stack;
  for (int i = 0; i < N; ++i) {
    if (!in[i] || seen[i]) continue;
    ++components;
    stack.push_back(i);
    seen[i] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return components;
}

}  // namespace ricci
