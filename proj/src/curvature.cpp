#include "ricci/curvature.hpp"

#include <cmath>

namespace ricci {

namespace {

// Extend f by two ghost nodes per side: parity reflection at pole ends,
// cubic extrapolation at boundary ends.
Eigen::ArrayXd extend2(const Eigen::ArrayXd& f, const WarpedMetric& m, int parity) {
  const int n = static_cast<int>(f.size());
  Eigen::ArrayXd g(n + 4);
  g.segment(2, n) = f;
  auto extrap = [&](int i0, int i1, int i2, int i3) {
    return 4.0 * f(i0) - 6.0 * f(i1) + 4.0 * f(i2) - f(i3);
  };
  if (m.end0 == EndKind::pole) {
    g(1) = parity * f(1);
    g(0) = parity * f(2);
  } else {
    g(1) = extrap(0, 1, 2, 3);
    g(0) = 4.0 * g(1) - 6.0 * f(0) + 4.0 * f(1) - f(2);
  }
  if (m.end1 == EndKind::pole) {
    g(n + 2) = parity * f(n - 2);
    g(n + 3) = parity * f(n - 3);
  } else {
    g(n + 2) = extrap(n - 1, n - 2, n - 3, n - 4);
    g(n + 3) = 4.0 * g(n + 2) - 6.0 * f(n - 1) + 4.0 * f(n - 2) - f(n - 3);
  }
  return g;
}

}  // namespace

Eigen::ArrayXd deriv_x(const Eigen::ArrayXd& f, const WarpedMetric& m, int parity) {
  const int n = static_cast<int>(f.size());
  const double h = m.grid.spacing();
  const Eigen::ArrayXd g = extend2(f, m, parity);
  Eigen::ArrayXd d(n);
  for (int i = 0; i < n; ++i) {
    const int k = i + 2;
    d(i) = (g(k - 2) - 8.0 * g(k - 1) + 8.0 * g(k + 1) - g(k + 2)) / (12.0 * h);
  }
  return d;
}

Eigen::ArrayXd deriv_xx(const Eigen::ArrayXd& f, const WarpedMetric& m, int parity) {
  const int n = static_cast<int>(f.size());
  const double h = m.grid.spacing();
  const Eigen::ArrayXd g = extend2(f, m, parity);
  Eigen::ArrayXd d(n);
  for (int i = 0; i < n; ++i) {
    const int k = i + 2;
    d(i) = (-g(k - 2) + 16.0 * g(k - 1) - 30.0 * g(k) + 16.0 * g(k + 1) - g(k + 2)) /
           (12.0 * h * h);
  }
  return d;
}

void dissipate(Eigen::ArrayXd& f, const WarpedMetric& m, int parity, double sigma) {
  const int n = static_cast<int>(f.size());
  const Eigen::ArrayXd g = extend2(f, m, parity);
  for (int i = 0; i < n; ++i) {
    const int k = i + 2;
    const double d4 = g(k - 2) - 4.0 * g(k - 1) + 6.0 * g(k) - 4.0 * g(k + 1) + g(k + 2);
    f(i) -= sigma / 16.0 * d4;
  }
}

CurvatureField curvature(const WarpedMetric& m) {
  m.validate();
  if (!m.grid.is_uniform(1e-10 * (1.0 + m.grid.spacing())))
    throw parameter_error("curvature requires a uniform coordinate grid");
  const int n = m.size();
  const int nd = m.dim;

  const Eigen::ArrayXd psi_x = deriv_x(m.psi, m, -1);
  const Eigen::ArrayXd psi_xx = deriv_xx(m.psi, m, -1);
  const Eigen::ArrayXd phi_x = deriv_x(m.phi, m, +1);

  const Eigen::ArrayXd psi_s = psi_x / m.phi;
  const Eigen::ArrayXd psi_ss =
      psi_xx / m.phi.square() - phi_x * psi_x / m.phi.cube();

  CurvatureField c;
  c.sec_radial.resize(n);
  c.sec_sphere.resize(n);
  for (int i = 0; i < n; ++i) {
    const bool pole = (i == 0 && m.end0 == EndKind::pole) ||
                      (i == n - 1 && m.end1 == EndKind::pole);
    if (pole) continue;  // filled below
    c.sec_radial(i) = -psi_ss(i) / m.psi(i);
    c.sec_sphere(i) = (1.0 - psi_s(i) * psi_s(i)) / (m.psi(i) * m.psi(i));
  }

  // Near a pole the sectional curvatures extend to smooth even functions of
  // arclength, but evaluating (1 - psi_s^2)/psi^2 at nodes where psi ~ h
  // amplifies node-level noise by 1/psi^2 and destabilizes the flow.  Replace
  // the first nodes by quadratic extrapolation in u = s^2 from nodes further
  // in (exact for smooth even profiles up to O(h^6) terms).
  const Eigen::ArrayXd s = m.arclength();
  auto extrap_even = [&](Eigen::ArrayXd& f, int pole, int dir, int src0,
                         int targets) {
    double u[3], v[3];
    for (int k = 0; k < 3; ++k) {
      const int i = pole + (src0 + k) * dir;
      const double d = s(i) - s(pole);
      u[k] = d * d;
      v[k] = f(i);
    }
    auto eval = [&](double uu) {
      double r = 0.0;
      for (int k = 0; k < 3; ++k) {
        double L = 1.0;
        for (int j = 0; j < 3; ++j)
          if (j != k) L *= (uu - u[j]) / (u[k] - u[j]);
        r += v[k] * L;
      }
      return r;
    };
    for (int t = 0; t < targets; ++t) {
      const int i = pole + t * dir;
      const double d = s(i) - s(pole);
      f(i) = eval(d * d);
    }
  };
  if (m.end0 == EndKind::pole) {
    extrap_even(c.sec_sphere, 0, +1, 3, 3);
    extrap_even(c.sec_radial, 0, +1, 1, 1);
  }
  if (m.end1 == EndKind::pole) {
    extrap_even(c.sec_sphere, n - 1, -1, 3, 3);
    extrap_even(c.sec_radial, n - 1, -1, 1, 1);
  }

  c.ric_radial = (nd - 1) * c.sec_radial;
  c.ric_sphere = c.sec_radial + (nd - 2) * c.sec_sphere;
  c.scalar = 2.0 * (nd - 1) * c.sec_radial + (nd - 1) * (nd - 2) * c.sec_sphere;
  c.ric_norm = (c.ric_radial.square() + (nd - 1) * c.ric_sphere.square()).sqrt();
  c.rm_norm = (4.0 * (nd - 1) * c.sec_radial.square() +
               2.0 * (nd - 1) * (nd - 2) * c.sec_sphere.square())
                  .sqrt();
  c.ric_minus = (-c.ric_radial.min(c.ric_sphere)).max(0.0);
  return c;
}

}  // namespace ricci
