#include "ricci/quotient.hpp"

#include <cmath>
#include <queue>

namespace ricci {

double unit_sphere_area(int k) {
  return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

QuotientMesh::QuotientMesh(const WarpedMetric& m, int alpha_bands) : m_(m) {
  if (alpha_bands < 128) alpha_bands = 128;
  m_.validate();
  s_ = m_.arclength();
  bands_ = alpha_bands;
  dalpha_ = M_PI / bands_;
  const int n = rows();
  const int nd = m_.dim;
  const double wedge = unit_sphere_area(nd - 2);  // weight of one fiber sphere slice
  const double full = unit_sphere_area(nd - 1);

  // node ids
  node_count_ = 0;
  row_first_.resize(n);
  for (int i = 0; i < n; ++i) {
    row_first_[i] = node_count_;
    const bool collapsed = (i == 0 && pole0()) || (i == n - 1 && pole1());
    node_count_ += collapsed ? 1 : bands_;
  }
  node_row_.resize(node_count_);
  node_band_.resize(node_count_);
  for (int i = 0; i < n; ++i) {
    const bool collapsed = (i == 0 && pole0()) || (i == n - 1 && pole1());
    const int cnt = collapsed ? 1 : bands_;
    for (int j = 0; j < cnt; ++j) {
      node_row_[row_first_[i] + j] = i;
      node_band_[row_first_[i] + j] = collapsed ? -1 : j;
    }
  }

  // row half-interval widths
  Eigen::ArrayXd ds(n);
  for (int i = 0; i < n; ++i) {
    const double lo = i > 0 ? 0.5 * (s_(i) - s_(i - 1)) : 0.0;
    const double hi = i + 1 < n ? 0.5 * (s_(i + 1) - s_(i)) : 0.0;
    ds(i) = lo + hi;
  }

  // weights and cell diameters
  weight_.resize(node_count_);
  diam_.resize(node_count_);
  for (int node = 0; node < node_count_; ++node) {
    const int i = node_row_[node];
    const int j = node_band_[node];
    if (j < 0) {
      // pole cell: psi ~ slope*s over the half interval next to the pole
      const int nb = (i == 0) ? 1 : n - 2;
      const double slope = std::abs(m_.psi(nb)) / std::abs(s_(nb) - s_(i));
      const double half = 0.5 * std::abs(s_(nb) - s_(i));
      weight_(node) = full * std::pow(slope, nd - 1) * std::pow(half, nd) / nd;
      diam_[node] = half;
    } else {
      const double sa = std::sin(alpha(j));
      weight_(node) = wedge * std::pow(m_.psi(i), nd - 1) *
                      std::pow(sa, nd - 2) * ds(i) * dalpha_;
      diam_[node] = std::hypot(ds(i), m_.psi(i) * dalpha_);
    }
  }

  // faces
  for (int i = 0; i + 1 < n; ++i) {
    const double delta = s_(i + 1) - s_(i);
    const double psif = 0.5 * (m_.psi(i) + m_.psi(i + 1));
    const bool a_pole = (i == 0 && pole0());
    const bool b_pole = (i + 1 == n - 1 && pole1());
    for (int j = 0; j < bands_; ++j) {
      const double sa = std::sin(alpha(j));
      const double cond =
          wedge * std::pow(psif, nd - 1) * std::pow(sa, nd - 2) * dalpha_ / delta;
      faces_.push_back({a_pole ? row_first_[i] : row_first_[i] + j,
                        b_pole ? row_first_[i + 1] : row_first_[i + 1] + j, cond});
      if (a_pole || b_pole) continue;
    }
  }
  for (int i = 0; i < n; ++i) {
    if ((i == 0 && pole0()) || (i == n - 1 && pole1())) continue;
    if (m_.psi(i) <= 0.0) continue;
    for (int j = 0; j + 1 < bands_; ++j) {
      const double af = (j + 1) * dalpha_;
      const double sa = std::sin(af);
      const double cond = wedge * std::pow(m_.psi(i), nd - 1) *
                          std::pow(sa, nd - 2) / (m_.psi(i) * m_.psi(i)) * ds(i) /
                          dalpha_;
      faces_.push_back({row_first_[i] + j, row_first_[i] + j + 1, cond});
    }
  }

  double hmax = 0.0, amax = 0.0;
  for (int i = 0; i + 1 < n; ++i) hmax = std::max(hmax, s_(i + 1) - s_(i));
  for (int i = 1; i + 1 < n; ++i) amax = std::max(amax, m_.psi(i) * dalpha_);
  err_bound_ = hmax + amax;
}

int QuotientMesh::node(int i, int j) const {
  const bool collapsed = (i == 0 && pole0()) || (i == rows() - 1 && pole1());
  return collapsed ? row_first_[i] : row_first_[i] + j;
}

Eigen::ArrayXd QuotientMesh::spread_rows(const Eigen::ArrayXd& row_values) const {
  Eigen::ArrayXd out(node_count_);
  for (int node = 0; node < node_count_; ++node) out(node) = row_values(node_row_[node]);
  return out;
}

double QuotientMesh::interp(const Eigen::ArrayXd& field, QuotientPoint p) const {
  const int n = rows();
  // locate s interval
  int i = 0;
  while (i + 2 < n && s_(i + 1) <= p.s) ++i;
  const double t = std::clamp((p.s - s_(i)) / (s_(i + 1) - s_(i)), 0.0, 1.0);
  const double aj = std::clamp(p.alpha / dalpha_ - 0.5, 0.0, bands_ - 1.0);
  const int j0 = std::min(static_cast<int>(aj), bands_ - 2);
  const double u = aj - j0;
  auto val = [&](int row, int j) { return field(node(row, j)); };
  const double f0 = (1 - u) * val(i, j0) + u * val(i, j0 + 1);
  const double f1 = (1 - u) * val(i + 1, j0) + u * val(i + 1, j0 + 1);
  return (1 - t) * f0 + t * f1;
}

namespace {

struct HeapEntry {
  double dist;
  int node;
  bool operator>(const HeapEntry& o) const { return dist > o.dist; }
};

}  // namespace

Eigen::ArrayXd fmm_distance(const QuotientMesh& mesh, QuotientPoint source,
                            double stop_radius) {
  const int n = mesh.rows();
  const int M = mesh.bands();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::ArrayXd u = Eigen::ArrayXd::Constant(mesh.node_count(), inf);
  std::vector<char> accepted(mesh.node_count(), 0);

  // Pole sources: minimal geodesics from a pole are the profile curves, so
  // the distance is plain arclength.
  if (is_pole_point(mesh.metric(), source)) {
    const double s0 = source.s < 0.5 * mesh.axis_length() ? 0.0 : mesh.axis_length();
    for (int node = 0; node < mesh.node_count(); ++node)
      u(node) = std::abs(mesh.s(mesh.row_of(node)) - s0);
    return u;
  }

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;

  // seed: local flat chart around the source
  int isrc = 0;
  while (isrc + 2 < n && mesh.s(isrc + 1) <= source.s) ++isrc;
  const double psi_src = mesh.interp(mesh.spread_rows(mesh.metric().psi), source);
  for (int i = std::max(0, isrc - 3); i <= std::min(n - 1, isrc + 4); ++i) {
    const bool collapsed = (i == 0 && mesh.pole0()) || (i == n - 1 && mesh.pole1());
    const int cnt = collapsed ? 1 : M;
    for (int j = 0; j < cnt; ++j) {
      const int node = mesh.node(i, collapsed ? 0 : j);
      const double dsv = mesh.s(i) - source.s;
      const double psb = 0.5 * (psi_src + mesh.psi_row(i));
      const double da = collapsed ? 0.0 : (mesh.alpha(j) - source.alpha);
      const double d = std::hypot(dsv, psb * da);
      if (d < u(node)) {
        u(node) = d;
        heap.push({d, node});
      }
    }
  }

  auto update = [&](int node) {
    const int i = mesh.row_of(node);
    const int j = mesh.band_of(node);
    // s-direction candidates
    double best_s = inf, ds_s = 0.0;
    for (int di : {-1, +1}) {
      const int ii = i + di;
      if (ii < 0 || ii >= n) continue;
      const int nb = mesh.node(ii, std::max(j, 0));
      if (!accepted[nb]) continue;
      if (u(nb) < best_s) {
        best_s = u(nb);
        ds_s = std::abs(mesh.s(ii) - mesh.s(i));
      }
    }
    double best_a = inf;
    double ds_a = mesh.psi_row(i) * mesh.dalpha();
    if (j >= 0) {
      for (int dj : {-1, +1}) {
        const int jj = j + dj;
        if (jj < 0 || jj >= M) continue;
        const int nb = mesh.node(i, jj);
        if (!accepted[nb]) continue;
        best_a = std::min(best_a, u(nb));
      }
    }
    double cand = inf;
    if (best_s < inf && best_a < inf && ds_a > 0.0) {
      const double a = best_s, b = best_a, da = ds_s, db = ds_a;
      const double denom = da * da + db * db;
      const double disc = denom - (a - b) * (a - b);
      if (disc > 0.0) {
        cand = (a * db * db + b * da * da + da * db * std::sqrt(disc)) / denom;
        if (cand < std::max(a, b)) cand = inf;  // causality fallback
      }
    }
    if (!(cand < inf)) {
      if (best_s < inf) cand = best_s + ds_s;
      if (best_a < inf && ds_a > 0.0) cand = std::min(cand, best_a + ds_a);
    }
    if (cand < u(node)) {
      u(node) = cand;
      heap.push({cand, node});
    }
  };

  while (!heap.empty()) {
    const HeapEntry e = heap.top();
    heap.pop();
    if (accepted[e.node] || e.dist > u(e.node)) continue;
    accepted[e.node] = 1;
    if (e.dist > stop_radius) break;
    const int i = mesh.row_of(e.node);
    const int j = mesh.band_of(e.node);
    // neighbors in s
    for (int di : {-1, +1}) {
      const int ii = i + di;
      if (ii < 0 || ii >= n) continue;
      const bool collapsed = (ii == 0 && mesh.pole0()) || (ii == n - 1 && mesh.pole1());
      if (collapsed) {
        const int nb = mesh.node(ii, 0);
        if (!accepted[nb]) update(nb);
      } else if (j >= 0) {
        const int nb = mesh.node(ii, j);
        if (!accepted[nb]) update(nb);
      } else {
        for (int jj = 0; jj < M; ++jj) {
          const int nb = mesh.node(ii, jj);
          if (!accepted[nb]) update(nb);
        }
      }
    }
    if (j >= 0) {
      for (int dj : {-1, +1}) {
        const int jj = j + dj;
        if (jj < 0 || jj >= M) continue;
        const int nb = mesh.node(i, jj);
        if (!accepted[nb]) update(nb);
      }
    }
  }
  return u;
}

double region_integral(const QuotientMesh& mesh, const Eigen::ArrayXd& dist,
                       double r, const Eigen::ArrayXd& node_values) {
  double acc = 0.0;
  for (int node = 0; node < mesh.node_count(); ++node) {
    const double d = dist(node);
    if (!(d < std::numeric_limits<double>::infinity())) continue;
    const double frac =
        std::clamp(0.5 + (r - d) / mesh.cell_diameter(node), 0.0, 1.0);
    if (frac > 0.0) acc += frac * mesh.weights()(node) * node_values(node);
  }
  return acc;
}

BallVolume ball_volume_from_distance(const QuotientMesh& mesh,
                                     const Eigen::ArrayXd& dist, double r) {
  BallVolume out;
  out.volume = region_integral(mesh, dist, r,
                               Eigen::ArrayXd::Ones(mesh.node_count()));
  double dmax = 0.0;
  for (int node = 0; node < mesh.node_count(); ++node)
    if (dist(node) < std::numeric_limits<double>::infinity())
      dmax = std::max(dmax, dist(node));
  out.saturated = r >= dmax;
  return out;
}

// -- 1D fast paths ---------------------------------------------------------

bool is_pole_point(const WarpedMetric& m, const QuotientPoint& p) {
  const Eigen::ArrayXd s = m.arclength();
  const double L = s(m.size() - 1);
  const double h0 = s(1) - s(0);
  const double h1 = s(m.size() - 1) - s(m.size() - 2);
  if (m.end0 == EndKind::pole && p.s <= 0.5 * h0) return true;
  if (m.end1 == EndKind::pole && p.s >= L - 0.5 * h1) return true;
  return false;
}

double pole_ball_integral(const WarpedMetric& m, const Eigen::ArrayXd& row_values,
                          double r) {
  const Eigen::ArrayXd s = m.arclength();
  const int n = m.size();
  const double full = unit_sphere_area(m.dim - 1);
  Eigen::ArrayXd f = row_values * m.psi.pow(m.dim - 1);
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    if (s(i) >= r) break;
    if (s(i + 1) <= r) {
      acc += 0.5 * (f(i) + f(i + 1)) * (s(i + 1) - s(i));
    } else {
      const double t = (r - s(i)) / (s(i + 1) - s(i));
      const double fe = (1 - t) * f(i) + t * f(i + 1);
      acc += 0.5 * (f(i) + fe) * (r - s(i));
    }
  }
  return full * acc;
}

BallVolume pole_ball_volume(const WarpedMetric& m, double r) {
  const double L = m.axis_length();
  BallVolume out;
  out.saturated = r >= L;
  out.volume = pole_ball_integral(m, Eigen::ArrayXd::Ones(m.size()),
                                  std::min(r, L));
  return out;
}

// -- metric-level operations ----------------------------------------------

double total_volume(const WarpedMetric& m) {
  m.validate();
  return pole_ball_integral(m, Eigen::ArrayXd::Ones(m.size()),
                            std::numeric_limits<double>::infinity());
}

namespace {

// Orient a pole-centered ball: distance from whichever pole the center sits at.
double center_arclength_from(const WarpedMetric& m, const QuotientPoint& c) {
  return c.s < 0.5 * m.axis_length() ? c.s : m.axis_length() - c.s;
}

Eigen::ArrayXd flip_rows(const Eigen::ArrayXd& v) { return v.reverse(); }

WarpedMetric flipped(const WarpedMetric& m) {
  WarpedMetric f = m;
  f.phi = flip_rows(m.phi);
  f.psi = flip_rows(m.psi);
  std::swap(f.end0, f.end1);
  return f;
}

// Ball integrals use the chart whose alpha coordinate is the fiber angle
// measured from the center's own direction, so the sin^2(alpha) volume
// weight is the correct pushforward; the distance field is then the solve
// with the source on the alpha = 0 edge.
double ball_field_integral(const WarpedMetric& m, const Eigen::ArrayXd& row_values,
                           const BallSpec& b, int alpha_bands) {
  if (is_pole_point(m, b.center)) {
    if (b.center.s < 0.5 * m.axis_length())
      return pole_ball_integral(m, row_values, b.radius);
    return pole_ball_integral(flipped(m), flip_rows(row_values), b.radius);
  }
  QuotientMesh mesh(m, alpha_bands);
  const Eigen::ArrayXd d = fmm_distance(mesh, {b.center.s, 0.0});
  return region_integral(mesh, d, b.radius, mesh.spread_rows(row_values));
}

}  // namespace

BallVolume ball_volume(const WarpedMetric& m, const BallSpec& b, int alpha_bands) {
  m.validate();
  if (!(b.radius > 0.0)) throw parameter_error("ball radius must be positive");
  if (is_pole_point(m, b.center)) {
    (void)center_arclength_from(m, b.center);
    return pole_ball_volume(
        b.center.s < 0.5 * m.axis_length() ? m : flipped(m), b.radius);
  }
  QuotientMesh mesh(m, alpha_bands);
  const Eigen::ArrayXd d = fmm_distance(mesh, {b.center.s, 0.0});
  return ball_volume_from_distance(mesh, d, b.radius);
}

double scalar_lp(const WarpedMetric& m, double q,
                 const std::optional<BallSpec>& region, int alpha_bands) {
  if (!(q >= 1.0)) throw parameter_error("scalar_lp exponent must be >= 1");
  const CurvatureField c = curvature(m);
  const Eigen::ArrayXd f = c.scalar.abs().pow(q);
  if (!region) return pole_ball_integral(m, f, std::numeric_limits<double>::infinity());
  return ball_field_integral(m, f, *region, alpha_bands);
}

double riemann_l2(const WarpedMetric& m, const std::optional<BallSpec>& region,
                  int alpha_bands) {
  const CurvatureField c = curvature(m);
  const Eigen::ArrayXd f = c.rm_norm.square();
  if (!region) return pole_ball_integral(m, f, std::numeric_limits<double>::infinity());
  return ball_field_integral(m, f, *region, alpha_bands);
}

double ricci_lp_ball(const WarpedMetric& m, const BallSpec& b, double q,
                     int alpha_bands) {
  const CurvatureField c = curvature(m);
  const Eigen::ArrayXd f = c.ric_norm.pow(q);
  return ball_field_integral(m, f, b, alpha_bands);
}

double distance(const WarpedMetric& m, QuotientPoint p, QuotientPoint q,
                int alpha_bands) {
  m.validate();
  const double L = m.axis_length();
  if (p.s < 0.0 || p.s > L || q.s < 0.0 || q.s > L || p.alpha < 0.0 ||
      p.alpha > M_PI || q.alpha < 0.0 || q.alpha > M_PI)
    throw parameter_error("point outside manifold parameterization");
  if (is_pole_point(m, p) || is_pole_point(m, q)) {
    const QuotientPoint pole = is_pole_point(m, p) ? p : q;
    const QuotientPoint other = is_pole_point(m, p) ? q : p;
    const double s0 = pole.s < 0.5 * L ? 0.0 : L;
    return std::abs(other.s - s0);
  }
  QuotientMesh mesh(m, alpha_bands);
  // only the relative fiber angle matters; solve in each point's own chart
  // and symmetrize
  const double beta = std::abs(p.alpha - q.alpha);
  const Eigen::ArrayXd dp = fmm_distance(mesh, {p.s, 0.0});
  const Eigen::ArrayXd dq = fmm_distance(mesh, {q.s, 0.0});
  return 0.5 * (mesh.interp(dp, {q.s, beta}) + mesh.interp(dq, {p.s, beta}));
}

}  // namespace ricci
