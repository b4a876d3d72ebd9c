#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "ricci/curvature.hpp"
#include "ricci/metric.hpp"
#include "ricci/quotient.hpp"

using namespace ricci;

namespace {

// Volume of a geodesic ball of radius r on the unit S^4 (any center).
double s4_ball_volume(double r) {
  const double c = std::cos(r);
  return 2.0 * M_PI * M_PI * (2.0 / 3.0 - c + c * c * c / 3.0);
}

}  // namespace

TEST_CASE("uniform grid basics") {
  Grid g = Grid::uniform(101);
  CHECK(g.size() == 101);
  CHECK(g.spacing() == doctest::Approx(0.01));
  CHECK(g.is_uniform(1e-12));
  CHECK_THROWS_AS(Grid::uniform(3), parameter_error);

  Eigen::ArrayXd f = g.x.square();
  CHECK(trapezoid(g.x, f) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("round sphere preset: geometry and curvature") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  CHECK_NOTHROW(m.validate());
  CHECK(m.axis_length() == doctest::Approx(M_PI).epsilon(1e-12));

  const CurvatureField c = curvature(m);
  for (int i = 0; i < m.size(); ++i) {
    CHECK(c.scalar(i) == doctest::Approx(12.0).epsilon(2e-3));
    CHECK(c.sec_radial(i) == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(c.sec_sphere(i) == doctest::Approx(1.0).epsilon(2e-3));
  }
  CHECK(c.ric_norm(200) == doctest::Approx(6.0).epsilon(1e-2));
  CHECK(c.rm_norm(200) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-2));
  CHECK(c.ric_minus.maxCoeff() == 0.0);

  // radius scaling
  const WarpedMetric m2 = make_round_sphere(2.0, 400);
  CHECK(curvature(m2).scalar(100) == doctest::Approx(3.0).epsilon(2e-3));
}

TEST_CASE("flat cap is flat to roundoff scale") {
  const WarpedMetric m = make_euclidean_cap(1.0, 400);
  CHECK_NOTHROW(m.validate());
  const CurvatureField c = curvature(m);
  CHECK(c.rm_norm.maxCoeff() < 1e-8);
  CHECK(c.scalar.abs().maxCoeff() < 1e-8);
}

TEST_CASE("capped cylinder and dumbbell presets") {
  const WarpedMetric cyl = make_cylinder_capped(0.5, 6.0, 600);
  CHECK_NOTHROW(cyl.validate());
  const CurvatureField c = curvature(cyl);
  // mid-section is an exact round cylinder: R = (n-1)(n-2)/rho^2
  CHECK(c.scalar(300) == doctest::Approx(6.0 / 0.25).epsilon(1e-2));
  CHECK(std::abs(c.sec_radial(300)) < 1e-6);

  const WarpedMetric db = make_dumbbell(1.0, 0.2, 8.0, 0.6, 1, 800);
  CHECK_NOTHROW(db.validate());
  // neck minimum sits at the midpoint (pole-adjacent nodes are smaller by
  // resolution, so scan the central third only)
  double mn = 1e300;
  for (int i = db.size() / 3; i < 2 * db.size() / 3; ++i)
    mn = std::min(mn, db.psi(i));
  CHECK(mn == doctest::Approx(0.2).epsilon(2e-2));

  CHECK_THROWS_AS(make_dumbbell(1.0, 1.5, 8.0, 0.6, 1, 400), parameter_error);
  CHECK_THROWS_AS(make_cylinder_capped(1.0, 2.0, 400), parameter_error);
}

TEST_CASE("validation catches broken metrics") {
  WarpedMetric m = make_round_sphere(1.0, 64);
  WarpedMetric bad = m;
  bad.psi(10) = -0.1;
  CHECK_THROWS_AS(bad.validate(), invalid_metric_error);
  bad = m;
  bad.phi(3) = 0.0;
  CHECK_THROWS_AS(bad.validate(), invalid_metric_error);
  bad = m;
  bad.psi(0) = 0.5;
  CHECK_THROWS_AS(bad.validate(), invalid_metric_error);
  bad = m;
  bad.psi *= 3.0;  // pole slope 3, not 1
  CHECK_THROWS_AS(bad.validate(), degenerate_pole_error);
}

TEST_CASE("rescale acts as a homothety") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  const WarpedMetric r = rescale(m, 4.0);
  CHECK_NOTHROW(r.validate());
  CHECK(curvature(r).scalar(100) ==
        doctest::Approx(curvature(m).scalar(100) / 4.0).epsilon(1e-10));
  CHECK(total_volume(r) == doctest::Approx(16.0 * total_volume(m)).epsilon(1e-10));
  CHECK_THROWS_AS(rescale(m, -1.0), parameter_error);
}

TEST_CASE("snapshot round trip") {
  WarpedMetric m = make_dumbbell(1.0, 0.3, 8.0, 0.6, 2, 128);
  m.time = 0.125;
  const std::string path = "snapshot_test.txt";
  save_snapshot(m, path);
  const WarpedMetric r = load_snapshot(path);
  std::remove(path.c_str());
  CHECK(r.size() == m.size());
  CHECK(r.time == m.time);
  CHECK((r.phi - m.phi).abs().maxCoeff() == 0.0);
  CHECK((r.psi - m.psi).abs().maxCoeff() == 0.0);
  CHECK(r.end0 == m.end0);
}

TEST_CASE("volumes on the unit sphere") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  CHECK(total_volume(m) ==
        doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-4));

  // pole-centered balls: exact 1D quadrature against the closed form
  for (double r : {0.4, 1.0, M_PI / 2}) {
    const BallVolume b = ball_volume(m, {{0.0, 0.0}, r});
    CHECK(b.volume == doctest::Approx(s4_ball_volume(r)).epsilon(1e-3));
    CHECK(!b.saturated);
  }
  CHECK(ball_volume(m, {{0.0, 0.0}, 4.0}).saturated);

  // off-pole center: the sphere is homogeneous, so the closed form still holds
  for (double r : {0.5, 1.2}) {
    const BallVolume b = ball_volume(m, {{M_PI / 2, 1.0}, r});
    CHECK(b.volume == doctest::Approx(s4_ball_volume(r)).epsilon(0.05));
  }
}

TEST_CASE("distances on the unit sphere") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  // pole to equator
  CHECK(distance(m, {0.0, 0.0}, {M_PI / 2, 0.3}) ==
        doctest::Approx(M_PI / 2).epsilon(1e-6));
  // two equator points separated by fiber angle beta: d = beta
  CHECK(distance(m, {M_PI / 2, 0.2}, {M_PI / 2, 0.9}) ==
        doctest::Approx(0.7).epsilon(0.05));
  // same profile curve
  CHECK(distance(m, {1.0, 0.5}, {2.0, 0.5}) == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(distance(m, {-1.0, 0.0}, {1.0, 0.0}), parameter_error);
}

TEST_CASE("curvature integrals") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  const double vol = 8.0 * M_PI * M_PI / 3.0;
  CHECK(scalar_lp(m, 2.0) == doctest::Approx(144.0 * vol).epsilon(1e-3));
  CHECK(riemann_l2(m) == doctest::Approx(24.0 * vol).epsilon(1e-2));
  CHECK(ricci_lp_ball(m, {{0.0, 0.0}, 1.0}, 2.0) ==
        doctest::Approx(36.0 * s4_ball_volume(1.0)).epsilon(1e-2));
}

TEST_CASE("quotient mesh bookkeeping") {
  const WarpedMetric m = make_round_sphere(1.0, 100);
  QuotientMesh mesh(m, 192);
  CHECK(mesh.rows() == 100);
  CHECK(mesh.bands() == 192);
  CHECK(mesh.node_count() == 98 * 192 + 2);
  CHECK(mesh.weights().sum() ==
        doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-3));
  // spreading a row field and interpolating returns the row value
  Eigen::ArrayXd rows = mesh.spread_rows(m.psi);
  CHECK(mesh.interp(rows, {M_PI / 2, 1.0}) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(mesh.error_bound() > 0.0);
}
