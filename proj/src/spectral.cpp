#include "ricci/spectral.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

#include "ricci/curvature.hpp"

namespace ricci {

void SobolevConstants::validate() const {
  if (!(A > 0.0)) throw parameter_error("Sobolev constant A must be positive");
  if (!(B >= 1.0)) throw parameter_error("Sobolev constant B must be >= 1");
}

namespace {

constexpr double kEigTol = 1e-8;
constexpr int kEigCap = 10000;

// Linear interpolation of a row field in arclength.
double interp_s(const Eigen::ArrayXd& s, const Eigen::ArrayXd& f, double q) {
  const int n = static_cast<int>(s.size());
  if (q <= s(0)) return f(0);
  if (q >= s(n - 1)) return f(n - 1);
  int i = 0;
  while (i + 2 < n && s(i + 1) <= q) ++i;
  const double t = (q - s(i)) / (s(i + 1) - s(i));
  return (1 - t) * f(i) + t * f(i + 1);
}

// Thomas solve of a symmetric tridiagonal system (diag d, off-diag e).
Eigen::ArrayXd tridiag_solve(const Eigen::ArrayXd& d, const Eigen::ArrayXd& e,
                             Eigen::ArrayXd rhs) {
  const int n = static_cast<int>(d.size());
  Eigen::ArrayXd c(n), x(n);
  c(0) = e(0) / d(0);
  rhs(0) /= d(0);
  for (int i = 1; i < n; ++i) {
    const double m = d(i) - e(i - 1) * c(i - 1);
    c(i) = (i + 1 < n ? e(i) : 0.0) / m;
    rhs(i) = (rhs(i) - e(i - 1) * rhs(i - 1)) / m;
  }
  x(n - 1) = rhs(n - 1);
  for (int i = n - 2; i >= 0; --i) x(i) = rhs(i) - c(i) * x(i + 1);
  return x;
}

}  // namespace

EigenResult lambda1_pole_ball(const WarpedMetric& m, double r) {
  m.validate();
  if (m.end0 != EndKind::pole) throw parameter_error("ball center must be a pole");
  if (!(r > 0.0 && r < m.axis_length()))
    throw parameter_error("ball radius outside the manifold");
  const Eigen::ArrayXd s = m.arclength();

  // cell-centered grid on [0, r]
  const int M = std::max(64, static_cast<int>(2.0 * r / m.axis_length() * m.size()));
  const double dx = r / M;
  Eigen::ArrayXd w_face(M + 1), mass(M);
  for (int i = 0; i <= M; ++i) {
    const double p = interp_s(s, m.psi, i * dx);
    w_face(i) = p * p * p;
  }
  for (int i = 0; i < M; ++i) {
    const double p = interp_s(s, m.psi, (i + 0.5) * dx);
    mass(i) = p * p * p * dx;
  }
  // stiffness: natural Neumann at 0 (w_face(0) = 0 at the pole), Dirichlet
  // half-cell ghost at r
  Eigen::ArrayXd diag(M), off(M - 1);
  for (int i = 0; i < M; ++i) {
    const double wl = i > 0 ? w_face(i) : 0.0;
    const double wr = i + 1 < M ? w_face(i + 1) : 2.0 * w_face(M);
    diag(i) = (wl + wr) / dx;
    if (i + 1 < M) off(i) = -w_face(i + 1) / dx;
  }

  EigenResult res;
  Eigen::ArrayXd u = Eigen::ArrayXd::Ones(M);
  auto apply = [&](const Eigen::ArrayXd& v) {
    Eigen::ArrayXd Av(M);
    for (int i = 0; i < M; ++i) {
      double a = diag(i) * v(i);
      if (i > 0) a += off(i - 1) * v(i - 1);
      if (i + 1 < M) a += off(i) * v(i + 1);
      Av(i) = a;
    }
    return Av;
  };
  double lambda = 0.0, prev = 1e300;
  for (res.iterations = 1; res.iterations <= kEigCap; ++res.iterations) {
    Eigen::ArrayXd v = tridiag_solve(diag, off, mass * u);
    v /= std::sqrt((mass * v.square()).sum());
    const Eigen::ArrayXd Av = apply(v);
    lambda = (v * Av).sum();  // Rayleigh quotient
    u = v;
    res.residual = std::sqrt((Av - lambda * mass * v).square().sum()) /
                   std::sqrt(Av.square().sum());
    if (res.residual <= 1e-8 &&
        std::abs(lambda - prev) <= kEigTol * std::abs(lambda))
      break;
    prev = lambda;
  }
  res.lambda1 = lambda;
  res.eigenfunction = u;
  if (res.iterations > kEigCap)
    throw convergence_error("pole-ball eigenvalue iteration did not converge", res);
  return res;
}

EigenResult lambda1_domain(const QuotientMesh& mesh, const std::vector<char>& domain) {
  const int N = mesh.node_count();
  if (static_cast<int>(domain.size()) != N)
    throw parameter_error("domain indicator size mismatch");
  std::vector<int> id(N, -1);
  int M = 0;
  for (int i = 0; i < N; ++i)
    if (domain[i]) id[i] = M++;
  if (M == 0) throw parameter_error("empty domain");

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(M);
  for (int i = 0; i < N; ++i)
    if (domain[i]) mass(id[i]) = mesh.weights()(i);
  for (const auto& f : mesh.faces()) {
    const int a = id[f.a], b = id[f.b];
    if (a >= 0) trip.emplace_back(a, a, f.conductance);
    if (b >= 0) trip.emplace_back(b, b, f.conductance);
    if (a >= 0 && b >= 0) {
      trip.emplace_back(a, b, -f.conductance);
      trip.emplace_back(b, a, -f.conductance);
    }
  }
  Eigen::SparseMatrix<double> A(M, M);
  A.setFromTriplets(trip.begin(), trip.end());
  // tiny shift keeps the factorization well-posed when the domain is the
  // whole closed manifold (lambda1 = 0, constant eigenfunction)
  const double shift = 1e-12 * mass.sum();
  for (int i = 0; i < M; ++i) A.coeffRef(i, i) += shift;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("stiffness factorization failed");

  EigenResult res;
  Eigen::VectorXd u = Eigen::VectorXd::Ones(M);
  u /= std::sqrt(u.dot(mass.asDiagonal() * u));
  double lambda = 0.0, prev = 1e300;
  for (res.iterations = 1; res.iterations <= kEigCap; ++res.iterations) {
    Eigen::VectorXd v = solver.solve(mass.asDiagonal() * u);
    v /= std::sqrt(v.dot(mass.asDiagonal() * v));
    lambda = v.dot(A * v) - shift;
    u = v;
    if (std::abs(lambda - prev) <= kEigTol * std::max(std::abs(lambda), 1e-300))
      break;
    prev = lambda;
  }
  res.lambda1 = lambda;
  res.residual = (A * u - (lambda + shift) * (mass.asDiagonal() * u)).norm() /
                 std::max((A * u).norm(), 1e-300);
  res.eigenfunction = Eigen::ArrayXd::Zero(N);
  for (int i = 0; i < N; ++i)
    if (domain[i]) res.eigenfunction(i) = u(id[i]);
  if (res.iterations > kEigCap)
    throw convergence_error("domain eigenvalue iteration did not converge", res);
  return res;
}

FaberKrahnResult faber_krahn(const WarpedMetric& m, const BallSpec& region,
                             const DomainFamily& family, int alpha_bands) {
  if (family.count <= 0) throw parameter_error("empty domain family");
  const bool pole = is_pole_point(m, region.center);
  FaberKrahnResult best;
  best.value = std::numeric_limits<double>::infinity();

  QuotientMesh mesh(m, alpha_bands);
  Eigen::ArrayXd dist;
  if (!pole) dist = fmm_distance(mesh, {region.center.s, 0.0});

  for (int k = 1; k <= family.count; ++k) {
    const double r = region.radius * k / family.count;
    double vol, lambda;
    if (pole) {
      vol = pole_ball_volume(m, r).volume;
      lambda = lambda1_pole_ball(m, r).lambda1;
    } else {
      vol = ball_volume_from_distance(mesh, dist, r).volume;
      std::vector<char> dom(mesh.node_count());
      for (int i = 0; i < mesh.node_count(); ++i) dom[i] = dist(i) < r;
      lambda = lambda1_domain(mesh, dom).lambda1;
    }
    const double v = std::pow(vol, 2.0 / m.dim) * lambda;
    if (v < best.value) {
      best.value = v;
      best.best_radius = r;
    }
  }
  return best;
}

EstimateReport sobolev_audit(const WarpedMetric& m, const SobolevConstants& c,
                             const BumpFamily& family) {
  c.validate();
  m.validate();
  const Eigen::ArrayXd s = m.arclength();
  const CurvatureField cv = curvature(m);
  const double n = m.dim;
  const double pcrit = 2.0 * n / (n - 2.0);

  EstimateReport rep = make_report("sobolev", "sobolev-inequality",
                                   BoundDirection::upper, 0.0, 0.0);
  rep.params["A"] = c.A;
  rep.params["B"] = c.B;
  double worst = std::numeric_limits<double>::infinity();
  bool any = false;
  for (double s0 : family.centers_s) {
    for (double w : family.widths) {
      const Eigen::ArrayXd u = (-((s - s0) / w).square()).exp();
      const Eigen::ArrayXd us = -2.0 * (s - s0) / (w * w) * u;
      const double lhs =
          std::pow(pole_ball_integral(m, u.pow(pcrit),
                                      std::numeric_limits<double>::infinity()),
                   (n - 2.0) / n);
      const double rhs =
          c.A * pole_ball_integral(m, us.square() + 0.25 * cv.scalar * u.square(),
                                   std::numeric_limits<double>::infinity()) +
          c.B * pole_ball_integral(m, u.square(),
                                   std::numeric_limits<double>::infinity());
      const double margin = rhs - lhs;
      if (!any || margin < worst) {
        worst = margin;
        rep.lhs = lhs;
        rep.rhs = rhs;
        rep.params["worst_center"] = s0;
        rep.params["worst_width"] = w;
        any = true;
      }
    }
  }
  if (!any) {
    rep.skipped = true;
    rep.note = "empty test family";
  }
  rep.finalize();
  return rep;
}

}  // namespace ricci
