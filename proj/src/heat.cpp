#include "ricci/heat.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ricci/curvature.hpp"

namespace ricci {

namespace {

// Node-centered finite-volume stencil for the radial Laplacian
// Lap f = (1/(phi psi^{n-1})) d/dx (psi^{n-1}/phi df/dx).  Fluxes telescope,
// so sum_i w_i (Lap f)_i vanishes on closed manifolds exactly.
struct RadialStencil {
  Eigen::ArrayXd w;     // cell volumes (include the sphere-area factor)
  Eigen::ArrayXd cond;  // face conductances, size n-1
};

RadialStencil make_stencil(const Eigen::ArrayXd& phi, const Eigen::ArrayXd& psi,
                           double h, EndKind end0, EndKind end1) {
  const int n = static_cast<int>(phi.size());
  const double area = unit_sphere_area(3);
  RadialStencil st;
  st.cond.resize(n - 1);
  st.w.resize(n);
  for (int i = 0; i + 1 < n; ++i) {
    const double pf = 0.5 * (phi(i) + phi(i + 1));
    const double sf = 0.5 * (psi(i) + psi(i + 1));
    st.cond(i) = area * sf * sf * sf / (pf * h);
  }
  for (int i = 0; i < n; ++i) st.w(i) = area * phi(i) * std::pow(psi(i), 3) * h;
  // end cells are half cells; pole cones get the exact cubic volume
  auto end_cell = [&](int i, int face, EndKind kind) {
    const double sf = 0.5 * (psi(i) + psi(face));
    if (kind == EndKind::pole)
      st.w(i) = area * phi(i) * 0.5 * h * sf * sf * sf / 4.0;
    else
      st.w(i) *= 0.5;
  };
  end_cell(0, 1, end0);
  end_cell(n - 1, n - 2, end1);
  return st;
}

// flux-form application: out_i = sum_faces cond (f_j - f_i) = w_i Lap f_i
Eigen::ArrayXd apply_flux(const RadialStencil& st, const Eigen::ArrayXd& f) {
  const int n = static_cast<int>(f.size());
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  for (int i = 0; i + 1 < n; ++i) {
    const double flux = st.cond(i) * (f(i + 1) - f(i));
    out(i) += flux;
    out(i + 1) -= flux;
  }
  return out;
}

double stable_dt(const RadialStencil& st) {
  const int n = static_cast<int>(st.w.size());
  double dt = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double c = 0.0;
    if (i > 0) c += st.cond(i - 1);
    if (i + 1 < n) c += st.cond(i);
    if (c > 0.0) dt = std::min(dt, st.w(i) / c);
  }
  return 0.8 * dt;
}

WarpedMetric lerp_metric(const WarpedMetric& a, const WarpedMetric& b, double t) {
  if (b.time <= a.time) return a;
  const double u = std::clamp((t - a.time) / (b.time - a.time), 0.0, 1.0);
  WarpedMetric m = a;
  m.phi = (1 - u) * a.phi + u * b.phi;
  m.psi = (1 - u) * a.psi + u * b.psi;
  m.time = t;
  return m;
}

// arclength distance of every row from the pole carrying x
Eigen::ArrayXd pole_row_distance(const WarpedMetric& m, const QuotientPoint& x) {
  if (!is_pole_point(m, x))
    throw parameter_error("radial heat operations need a pole-centered point");
  const Eigen::ArrayXd s = m.arclength();
  const double L = s(m.size() - 1);
  return x.s < 0.5 * L ? s : Eigen::ArrayXd(L - s);
}

double sup_t_rm_on_ball(const Trajectory& traj, const QuotientPoint& x, double r,
                        double t_max) {
  double sup = 0.0;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    if (traj.times[k] <= 0.0 || traj.times[k] > t_max + 1e-12) continue;
    const WarpedMetric& m = traj.checkpoints[k];
    const Eigen::ArrayXd d = pole_row_distance(m, x);
    const CurvatureField c = curvature(m);
    for (int i = 0; i < m.size(); ++i)
      if (d(i) <= r) sup = std::max(sup, traj.times[k] * c.rm_norm(i));
  }
  return sup;
}

}  // namespace

const Eigen::ArrayXd& HeatField::at_time(double t) const {
  if (times.empty()) throw parameter_error("empty heat field");
  size_t best = 0;
  for (size_t k = 1; k < times.size(); ++k)
    if (std::abs(times[k] - t) < std::abs(times[best] - t)) best = k;
  return values[best];
}

void MoserParams::validate() const {
  if (n < 3) throw parameter_error("Moser dimension must be >= 3");
  if (!(p > 0.0)) throw parameter_error("Moser exponent p must be positive");
  if (!(A > 0.0 && B >= 1.0))
    throw parameter_error("Moser Sobolev constants need A > 0, B >= 1");
  if (!(ell >= 1.0)) throw parameter_error("Moser reaction bound needs ell >= 1");
  if (!(alpha_u > 0.0 && c1 > 0.0))
    throw parameter_error("cut-off constants alpha, c1 must be positive");
  if (!(r > 0.0)) throw parameter_error("Moser radius must be positive");
  if (p < 2.0) {
    if (!(gamma > 0.0 && gamma < 1.0 &&
          2.0 * std::pow(gamma, (n + 2.0) / p) > 1.0))
      throw parameter_error(
          "Moser p < 2 branch needs gamma in (0,1) with 2 gamma^{(n+2)/p} > 1");
  }
}

MoserConstants moser_constants(const MoserParams& mp) {
  mp.validate();
  const double n = mp.n, p = mp.p;
  const double base = std::pow(4.0 * mp.A, n / (2.0 * p)) *
                      std::pow(1.0 + 2.0 / n, (n + 2.0) * (n + 2.0) / (2.0 * p)) *
                      std::exp(2.0 * mp.c1 * mp.alpha_u * mp.alpha_u * (n + 2.0) / p);
  MoserConstants out;
  out.T_hat = std::min(mp.r * mp.r / 4.0, mp.alpha_u * mp.c1 * mp.r * mp.r / 4.0);
  if (p >= 2.0) {
    out.K = base;
    out.branch = MoserConstants::Case::p_ge_2;
  } else {
    const double ge = std::pow(mp.gamma, (n + 2.0) / p);
    out.K = ge * p * std::pow(2.0 - p, (2.0 - p) / p) * base /
            ((2.0 * ge - 1.0) * std::pow(1.0 - mp.gamma, (n + 2.0) / p));
    out.branch = MoserConstants::Case::p_lt_2;
  }
  return out;
}

CutoffField cutoff_construct(const Trajectory& traj, QuotientPoint x, double r1,
                             double r2, double eps, double alpha_u, double c1,
                             double slack_tol) {
  if (traj.checkpoints.empty()) throw parameter_error("empty trajectory");
  if (!(0.0 < r1 && r1 < r2)) throw parameter_error("cut-off needs 0 < r1 < r2");
  if (!(eps > 0.0 && eps < 1.0)) throw parameter_error("cut-off eps must lie in (0,1)");
  if (!(alpha_u > 0.0 && c1 > 0.0))
    throw parameter_error("cut-off constants alpha, c1 must be positive");

  CutoffField out;
  out.r1 = r1;
  out.r2 = r2;
  out.eps = eps;
  out.sigma_c = alpha_u / (eps * (r2 - r1) * (r2 - r1));
  out.T_hat = std::min(r1 * r1, alpha_u * c1 * (r2 - r1) * (r2 - r1));
  const double t0 = traj.times.front();

  auto eta = [&](double d) {
    if (d <= r1) return 1.0;
    if (d >= r2) return 0.0;
    const double u = (d - r1) / (r2 - r1);
    return 1.0 - 3.0 * u * u + 2.0 * u * u * u;
  };
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const double tau = traj.times[k] - t0;
    if (tau >= out.T_hat) break;
    const WarpedMetric& m = traj.checkpoints[k];
    const Eigen::ArrayXd d = pole_row_distance(m, x);
    Eigen::ArrayXd phi(m.size());
    for (int i = 0; i < m.size(); ++i)
      phi(i) = std::exp(-out.sigma_c * tau) * eta(d(i));
    out.values.push_back(phi);
    out.times.push_back(traj.times[k]);
  }
  if (out.values.size() < 2)
    throw parameter_error("trajectory too short to verify the cut-off window");

  // numerical verification of the four properties
  const double grad_bound = alpha_u / (eps * (r2 - r1));
  for (size_t k = 0; k + 1 < out.values.size(); ++k) {
    const double dt = out.times[k + 1] - out.times[k];
    const double tm = 0.5 * (out.times[k] + out.times[k + 1]);
    const WarpedMetric m =
        lerp_metric(traj.checkpoints[k], traj.checkpoints[k + 1], tm);
    const RadialStencil st =
        make_stencil(m.phi, m.psi, m.grid.spacing(), m.end0, m.end1);
    const Eigen::ArrayXd fm = 0.5 * (out.values[k] + out.values[k + 1]);
    const Eigen::ArrayXd lap = apply_flux(st, fm) / st.w;
    const Eigen::ArrayXd dphidt = (out.values[k + 1] - out.values[k]) / dt;
    const Eigen::ArrayXd s = m.arclength();
    for (int i = 0; i < m.size(); ++i) {
      const double margin = lap(i) - dphidt(i);
      out.worst_slack = std::min(out.worst_slack, margin);
      if (margin < -slack_tol - 1e-2 * out.sigma_c) {
        std::ostringstream msg;
        msg << "cut-off heat inequality violated at s=" << s(i) << " t=" << tm
            << " by " << -margin;
        throw construction_error(msg.str());
      }
      if (i + 1 < m.size()) {
        const double grad =
            std::abs(fm(i + 1) - fm(i)) / (s(i + 1) - s(i));
        if (grad > grad_bound * (1.0 + 1e-6)) {
          std::ostringstream msg;
          msg << "cut-off gradient bound violated at s=" << s(i) << " t=" << tm;
          throw construction_error(msg.str());
        }
      }
    }
  }
  // support identities hold exactly by construction; spot-check anyway
  for (size_t k = 0; k < out.values.size(); ++k) {
    const double tau = out.times[k] - t0;
    const Eigen::ArrayXd d = pole_row_distance(traj.checkpoints[k], x);
    for (int i = 0; i < d.size(); ++i) {
      if (d(i) <= r1 &&
          std::abs(out.values[k](i) - std::exp(-out.sigma_c * tau)) > 1e-14)
        throw construction_error("cut-off inner-support identity failed");
      if (d(i) >= r2 && out.values[k](i) != 0.0)
        throw construction_error("cut-off outer-support identity failed");
    }
  }
  out.c0_hat = sup_t_rm_on_ball(traj, x, r2, out.times.back());
  return out;
}

HeatField solve_heat(const Trajectory& traj, const std::vector<char>& domain,
                     const Eigen::ArrayXd& f0, double ell) {
  if (traj.checkpoints.size() < 2)
    throw parameter_error("heat solve needs at least two checkpoints");
  const int n = traj.front().size();
  if (f0.size() != n) throw parameter_error("initial data size mismatch");
  if (!domain.empty() && static_cast<int>(domain.size()) != n)
    throw parameter_error("domain indicator size mismatch");
  if (f0.minCoeff() < -1e-12)
    throw parameter_error("heat initial data must be non-negative");
  if (ell > 0.0 && !(traj.times.front() > 0.0))
    throw parameter_error("ell/t reaction needs a positive start time");
  if (ell < 0.0) throw parameter_error("reaction bound ell must be non-negative");

  auto mask = [&](Eigen::ArrayXd& f) {
    if (domain.empty()) return;
    for (int i = 0; i < n; ++i)
      if (!domain[i]) f(i) = 0.0;
  };

  HeatField out;
  out.domain = domain;
  out.ell = ell;
  Eigen::ArrayXd f = f0.max(0.0);
  mask(f);
  out.values.push_back(f);
  out.times.push_back(traj.times.front());

  for (size_t k = 0; k + 1 < traj.checkpoints.size(); ++k) {
    const double t1 = traj.times[k], t2 = traj.times[k + 1];
    const RadialStencil probe =
        make_stencil(traj.checkpoints[k].phi, traj.checkpoints[k].psi,
                     traj.front().grid.spacing(), traj.front().end0,
                     traj.front().end1);
    const int nsub =
        std::max(1, static_cast<int>(std::ceil((t2 - t1) / stable_dt(probe))));
    const double dt = (t2 - t1) / nsub;
    for (int j = 0; j < nsub; ++j) {
      const double ta = t1 + j * dt;
      const WarpedMetric m = lerp_metric(traj.checkpoints[k],
                                         traj.checkpoints[k + 1], ta + 0.5 * dt);
      const RadialStencil st =
          make_stencil(m.phi, m.psi, m.grid.spacing(), m.end0, m.end1);
      f += dt * apply_flux(st, f) / st.w;
      if (ell > 0.0) f *= std::pow((ta + dt) / ta, ell);
      mask(f);
      if (f.minCoeff() < -1e-12)
        throw solver_error("heat solution lost positivity");
      f = f.max(0.0);
    }
    out.values.push_back(f);
    out.times.push_back(t2);
  }
  return out;
}

Eigen::ArrayXd radial_weights(const WarpedMetric& m) {
  return make_stencil(m.phi, m.psi, m.grid.spacing(), m.end0, m.end1).w;
}

HeatField solve_conjugate_heat(const Trajectory& traj, QuotientPoint x, double t,
                               double l_min) {
  if (!(0.0 < l_min && l_min < t))
    throw parameter_error("conjugate heat needs 0 < l_min < t");
  int kt = -1;
  for (size_t k = 0; k < traj.times.size(); ++k)
    if (std::abs(traj.times[k] - t) < 1e-9) kt = static_cast<int>(k);
  if (kt <= 0) throw parameter_error("final time must be an interior checkpoint");
  if (traj.times.front() > l_min + 1e-12)
    throw parameter_error("trajectory does not reach l_min");

  const WarpedMetric& mt = traj.checkpoints[kt];
  const int n = mt.size();
  const Eigen::ArrayXd d0 = pole_row_distance(mt, x);
  const double h = mt.grid.spacing();
  const double width = 3.0 * h;  // mollified point mass

  RadialStencil st = make_stencil(mt.phi, mt.psi, h, mt.end0, mt.end1);
  Eigen::ArrayXd u = (-(d0 / width).square()).exp();
  u /= (u * st.w).sum();
  Eigen::ArrayXd mass = u * st.w;  // evolved quantity: m_i = u_i w_i

  HeatField out;  // assembled backward, reversed at the end
  out.values.push_back(u);
  out.times.push_back(t);

  for (int k = kt - 1; k >= 0; --k) {
    const double l2 = traj.times[k + 1];
    const double l1 = std::max(traj.times[k], l_min);
    if (l1 >= l2) break;
    const WarpedMetric& ma = traj.checkpoints[k];
    const WarpedMetric& mb = traj.checkpoints[k + 1];
    // log-derivative of the cell volumes across this checkpoint interval;
    // on a flow background it telescopes exactly against -int R dl
    const Eigen::ArrayXd lnw_rate =
        ((make_stencil(mb.phi, mb.psi, h, mb.end0, mb.end1).w /
          make_stencil(ma.phi, ma.psi, h, ma.end0, ma.end1).w)
             .log()) /
        (mb.time - ma.time);

    const RadialStencil probe = make_stencil(ma.phi, ma.psi, h, ma.end0, ma.end1);
    const int nsub =
        std::max(1, static_cast<int>(std::ceil((l2 - l1) / stable_dt(probe))));
    const double dl = (l2 - l1) / nsub;
    for (int j = 0; j < nsub; ++j) {
      const double lm = l2 - (j + 0.5) * dl;  // substep midpoint
      const WarpedMetric m = lerp_metric(ma, mb, lm);
      const RadialStencil sm = make_stencil(m.phi, m.psi, h, m.end0, m.end1);
      const CurvatureField c = curvature(m);
      mass += dl * apply_flux(sm, mass / sm.w);
      mass *= (-dl * (c.scalar + lnw_rate)).exp();
      if (mass.minCoeff() < -1e-12)
        throw solver_error("conjugate heat kernel lost positivity");
    }
    const WarpedMetric ml = lerp_metric(ma, mb, l1);
    out.values.push_back(mass /
                         make_stencil(ml.phi, ml.psi, h, ml.end0, ml.end1).w);
    out.times.push_back(l1);
    out.first_checkpoint = k;
    if (l1 <= l_min + 1e-15) break;
  }
  std::reverse(out.values.begin(), out.values.end());
  std::reverse(out.times.begin(), out.times.end());
  return out;
}

namespace {

// trapezoid over stored slices clipped to [a, b], endpoints by linear
// interpolation of the integrand
double slice_time_integral(const std::vector<double>& ts,
                           const std::vector<double>& gs, double a, double b) {
  if (ts.front() > a + 1e-12 || ts.back() < b - 1e-12)
    throw parameter_error("window not covered by stored slices");
  auto value_at = [&](double tt) {
    size_t i = 0;
    while (i + 2 < ts.size() && ts[i + 1] <= tt) ++i;
    const double u = (tt - ts[i]) / (ts[i + 1] - ts[i]);
    return (1 - u) * gs[i] + u * gs[i + 1];
  };
  std::vector<double> xs{a}, ys{value_at(a)};
  for (size_t i = 0; i < ts.size(); ++i)
    if (ts[i] > a + 1e-14 && ts[i] < b - 1e-14) {
      xs.push_back(ts[i]);
      ys.push_back(gs[i]);
    }
  xs.push_back(b);
  ys.push_back(value_at(b));
  double acc = 0.0;
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    acc += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
  return acc;
}

}  // namespace

EstimateReport moser_audit(const HeatField& h, const Trajectory& traj,
                           QuotientPoint x, double r, double p, double t,
                           const MoserParams& mp) {
  MoserParams mpr = mp;
  mpr.p = p;
  mpr.r = r;
  const MoserConstants mc = moser_constants(mpr);
  if (!(t > 0.0 && t < mc.T_hat))
    throw parameter_error("Moser audit needs 0 < t < T_hat");
  if (h.times.empty()) throw parameter_error("empty heat field");

  EstimateReport rep = make_report("moser", "moser-sup-bound",
                                   BoundDirection::upper, 0.0, 0.0);
  rep.time = t;
  rep.center_s = x.s;
  rep.center_alpha = x.alpha;
  rep.radius = r;
  rep.params["p"] = p;
  rep.params["ell"] = h.ell;
  rep.params["K"] = mc.K;
  rep.params["T_hat"] = mc.T_hat;

  const double c0_hat = sup_t_rm_on_ball(traj, x, r, t);
  rep.params["c0_hat"] = c0_hat;
  if (h.c0 > 0.0 && c0_hat > h.c0 * (1.0 + 1e-9)) {
    rep.skipped = true;
    rep.note = "curvature hypothesis |Rm| <= c0/t not verified on the ball";
    return rep.finalize();
  }

  // sup over the half ball at time t (nearest stored slice)
  size_t kt = 0;
  for (size_t k = 1; k < h.times.size(); ++k)
    if (std::abs(h.times[k] - t) < std::abs(h.times[kt] - t)) kt = k;
  const WarpedMetric& m_t = traj.checkpoints[h.first_checkpoint + kt];
  const Eigen::ArrayXd dt_rows = pole_row_distance(m_t, x);
  double sup = 0.0;
  for (int i = 0; i < m_t.size(); ++i)
    if (dt_rows(i) <= 0.5 * r) sup = std::max(sup, h.values[kt](i));

  // space-time integral of f^p over B(x, r), [t/2, t]
  std::vector<double> gs(h.times.size());
  for (size_t k = 0; k < h.times.size(); ++k) {
    const WarpedMetric& m = traj.checkpoints[h.first_checkpoint + k];
    Eigen::ArrayXd fp = h.values[k].pow(p);
    if (m.end0 != EndKind::pole || x.s >= 0.5 * m.axis_length()) {
      // integrate from the far pole by flipping rows
      fp = fp.reverse().eval();
      WarpedMetric fl = m;
      fl.phi = m.phi.reverse();
      fl.psi = m.psi.reverse();
      std::swap(fl.end0, fl.end1);
      gs[k] = pole_ball_integral(fl, fp, r);
    } else {
      gs[k] = pole_ball_integral(m, fp, r);
    }
  }
  const double st_int = slice_time_integral(h.times, gs, 0.5 * t, t);

  const double n = mp.n;
  const double shape = mp.B +
                       (p >= 2.0 ? 2.0 * n * h.ell * p / t : 4.0 * n * h.ell / t) +
                       32.0 * mp.alpha_u * mp.alpha_u * n * n / (r * r);
  const double denom =
      std::pow(shape, (n + 2.0) / (2.0 * p)) * std::pow(st_int, 1.0 / p);
  rep.lhs = sup;
  rep.rhs = mc.K * denom;
  if (denom > 0.0) rep.params["K_star"] = sup / denom;
  return rep.finalize();
}

EstimateReport ricci_moser_audit(const Trajectory& traj, QuotientPoint x,
                                 double r, double p, double t,
                                 const MoserParams& mp, double eps) {
  HeatField h;
  h.first_checkpoint = 0;
  for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
    const CurvatureField c = curvature(traj.checkpoints[k]);
    h.values.push_back((c.ric_norm.square() + eps).sqrt());
    h.times.push_back(traj.times[k]);
  }
  // measured reaction bound: L = c(n)|Rm| <= ell/t with c(n) = 1 fitted
  h.ell = std::max(1.0, sup_t_rm_on_ball(traj, x, r, t));
  h.c0 = 0.0;
  EstimateReport rep = moser_audit(h, traj, x, r, p, t, mp);
  rep.name = "ricci-moser";
  rep.params["eps"] = eps;
  return rep;
}

std::pair<EstimateReport, EstimateReport> kernel_bounds_audit(
    const HeatField& G, const Trajectory& traj, const NonInflateConstants& k,
    QuotientPoint x, double t, double l) {
  k.validate();
  if (!(l < t)) throw parameter_error("kernel audit needs l < t");
  const int n = traj.front().dim;
  const double tau = t - l;

  size_t kl = 0;
  for (size_t j = 1; j < G.times.size(); ++j)
    if (std::abs(G.times[j] - l) < std::abs(G.times[kl] - l)) kl = j;
  const Eigen::ArrayXd& u = G.values[kl];
  const WarpedMetric& ml = traj.checkpoints[G.first_checkpoint + kl];
  const double mass = (u * radial_weights(ml)).sum();

  EstimateReport up = make_report("kernel-mass", "kernel-mass-upper",
                                  BoundDirection::upper, mass,
                                  1.0 + k.C0 * std::pow(1.0 + tau, 0.5 * n));
  up.time = l;
  up.center_s = x.s;
  up.params["t"] = t;
  up.params["C0"] = k.C0;
  up.finalize();

  // pointwise Gaussian lower bound on rows within 3 sqrt(t-l) of the center
  const double J = std::exp(-k.alpha_J - t * k.beta_J - t * k.B_low);
  double r_sup = 0.0;  // time quadrature of sqrt(t-s) sup_M R
  {
    std::vector<double> ts, gs;
    for (size_t j = 0; j < traj.times.size(); ++j) {
      if (traj.times[j] < l - 1e-12 || traj.times[j] > t + 1e-12) continue;
      ts.push_back(traj.times[j]);
      gs.push_back(std::sqrt(std::max(t - traj.times[j], 0.0)) *
                   curvature(traj.checkpoints[j]).scalar.maxCoeff());
    }
    for (size_t j = 0; j + 1 < ts.size(); ++j)
      r_sup += 0.5 * (gs[j] + gs[j + 1]) * (ts[j + 1] - ts[j]);
  }
  size_t ktc = 0;
  for (size_t j = 1; j < traj.times.size(); ++j)
    if (std::abs(traj.times[j] - t) < std::abs(traj.times[ktc] - t)) ktc = j;
  const Eigen::ArrayXd d_t = pole_row_distance(traj.checkpoints[ktc], x);

  double c1_fit = std::numeric_limits<double>::infinity();
  for (int i = 0; i < u.size(); ++i) {
    if (d_t(i) > 3.0 * std::sqrt(tau)) continue;
    const double envelope = J / std::pow(tau, 0.5 * n) *
                            std::exp(-2.0 * k.c2 * d_t(i) * d_t(i) / tau) *
                            std::exp(-r_sup / std::sqrt(tau));
    c1_fit = std::min(c1_fit, u(i) / envelope);
  }
  EstimateReport lo = make_report("kernel-lower", "kernel-gaussian-lower",
                                  BoundDirection::lower, c1_fit, k.c1);
  lo.time = l;
  lo.center_s = x.s;
  lo.params["t"] = t;
  lo.params["c1_fit"] = c1_fit;
  lo.params["c2"] = k.c2;
  lo.finalize();
  return {up, lo};
}

void save_heat_snapshot(const WarpedMetric& m, const Eigen::ArrayXd& f,
                        const std::string& path) {
  if (f.size() != m.size()) throw parameter_error("field size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# heat-snapshot v1\n";
  out << m.dim << " " << m.size() << " ";
  out.precision(17);
  out << m.time << "\n";
  for (int i = 0; i < m.size(); ++i)
    out << m.grid.x(i) << " " << m.phi(i) << " " << m.psi(i) << " " << f(i)
        << "\n";
}

}  // namespace ricci
