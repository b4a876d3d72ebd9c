#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "ricci/spectral.hpp"

using namespace ricci;

namespace {

constexpr double kBessel11 = 3.8317059702075123;  // first zero of J_1

// Independent shooting oracle for the radial problem
// u'' + 3 (psi'/psi) u' + lambda u = 0, u(r) = 0, regular at 0.
double shoot_lambda1(const std::function<double(double)>& log_psi_deriv, double r) {
  auto endpoint = [&](double lambda) {
    const double h = 1e-4;
    double s = 10 * h;
    // series start: u = 1 - lambda s^2/8
    double u = 1.0 - lambda * s * s / 8.0;
    double v = -lambda * s / 4.0;
    auto f = [&](double ss, double uu, double vv) {
      return -3.0 * log_psi_deriv(ss) * vv - lambda * uu;
    };
    while (s < r - 1e-12) {
      const double hh = std::min(h, r - s);
      const double k1u = v, k1v = f(s, u, v);
      const double k2u = v + 0.5 * hh * k1v, k2v = f(s + 0.5 * hh, u + 0.5 * hh * k1u, v + 0.5 * hh * k1v);
      const double k3u = v + 0.5 * hh * k2v, k3v = f(s + 0.5 * hh, u + 0.5 * hh * k2u, v + 0.5 * hh * k2v);
      const double k4u = v + hh * k3v, k4v = f(s + hh, u + hh * k3u, v + hh * k3v);
      u += hh / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
      v += hh / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
      s += hh;
    }
    return u;
  };
  // bracket the FIRST zero of the endpoint (higher lambdas oscillate)
  double lo = 0.5, hi = lo;
  while (endpoint(hi) > 0.0) {
    lo = hi;
    hi *= 1.25;
    if (hi > 1e6) return -1.0;
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (endpoint(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("hemisphere eigenvalue equals the dimension") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  const EigenResult res = lambda1_pole_ball(m, M_PI / 2);
  CHECK(res.lambda1 == doctest::Approx(4.0).epsilon(0.01));
  CHECK(res.residual < 1e-6);

  const double oracle =
      shoot_lambda1([](double s) { return std::cos(s) / std::sin(s); }, M_PI / 2);
  CHECK(oracle == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(res.lambda1 == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("flat cap eigenvalue hits the Bessel root") {
  const WarpedMetric m = make_euclidean_cap(1.0, 400);
  for (double r : {0.3, 0.5, 0.8}) {
    const EigenResult res = lambda1_pole_ball(m, r);
    CHECK(res.lambda1 ==
          doctest::Approx(kBessel11 * kBessel11 / (r * r)).epsilon(0.01));
  }
  const double oracle = shoot_lambda1([](double s) { return 1.0 / s; }, 0.5);
  CHECK(oracle == doctest::Approx(kBessel11 * kBessel11 / 0.25).epsilon(1e-3));
}

TEST_CASE("Dirichlet domain monotonicity") {
  const WarpedMetric m = make_round_sphere(1.0, 300);
  double prev = 1e300;
  for (double r : {0.5, 0.8, 1.1, 1.4}) {
    const double l = lambda1_pole_ball(m, r).lambda1;
    CHECK(l < prev);
    prev = l;
  }
}

TEST_CASE("variational solver agrees with the radial one") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  QuotientMesh mesh(m, 96);
  for (double r : {0.8, M_PI / 2}) {
    std::vector<char> dom(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) dom[i] = mesh.s(mesh.row_of(i)) < r;
    const double l2d = lambda1_domain(mesh, dom).lambda1;
    const double l1d = lambda1_pole_ball(m, r).lambda1;
    CHECK(l2d == doctest::Approx(l1d).epsilon(0.02));
  }
}

TEST_CASE("disjoint union takes the min") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  QuotientMesh mesh(m, 96);
  const double r1 = 0.6, r2 = 0.9;
  std::vector<char> ball1(mesh.node_count()), ball2(mesh.node_count()),
      both(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) {
    const double s = mesh.s(mesh.row_of(i));
    ball1[i] = s < r1;
    ball2[i] = s > M_PI - r2;
    both[i] = ball1[i] || ball2[i];
  }
  const double la = lambda1_domain(mesh, ball1).lambda1;
  const double lb = lambda1_domain(mesh, ball2).lambda1;
  const double lu = lambda1_domain(mesh, both).lambda1;
  CHECK(lu == doctest::Approx(std::min(la, lb)).epsilon(1e-4));
}

TEST_CASE("capacity of a point: near-full domains have tiny eigenvalue") {
  double prev = 1e300;
  for (int nodes : {100, 200}) {
    const WarpedMetric m = make_round_sphere(1.0, nodes);
    QuotientMesh mesh(m, nodes / 2);
    std::vector<char> dom(mesh.node_count(), 1);
    dom[mesh.node(nodes / 2, 0)] = 0;  // delete one equatorial cell
    const double l = lambda1_domain(mesh, dom).lambda1;
    CHECK(l < 0.5);
    CHECK(l < prev);
    prev = l;
  }
}

TEST_CASE("Faber-Krahn on the flat cap") {
  const WarpedMetric m = make_euclidean_cap(1.0, 400);
  const double expect = std::sqrt(M_PI * M_PI / 2.0) * kBessel11 * kBessel11;
  const FaberKrahnResult a = faber_krahn(m, {{0.0, 0.0}, 0.5}, {});
  CHECK(a.value == doctest::Approx(expect).epsilon(0.02));
  // independent of the family's outer radius (scale invariance)
  const FaberKrahnResult b = faber_krahn(m, {{0.0, 0.0}, 0.8}, {});
  CHECK(b.value == doctest::Approx(a.value).epsilon(0.01));
  // and of a homothety of the metric
  const FaberKrahnResult c = faber_krahn(rescale(m, 2.5), {{0.0, 0.0}, 0.5}, {});
  CHECK(c.value == doctest::Approx(a.value).epsilon(0.02));
}

TEST_CASE("Faber-Krahn on the sphere is positive and refinement-stable") {
  auto value = [](int nodes) {
    const WarpedMetric m = make_round_sphere(1.0, nodes);
    return faber_krahn(m, {{0.0, 0.0}, M_PI / 2}, {}).value;
  };
  const double v1 = value(200), v2 = value(400);
  CHECK(v1 > 0.0);
  CHECK(v2 == doctest::Approx(v1).epsilon(0.02));
}

TEST_CASE("faber_krahn never exceeds a sampled domain's value") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  const FaberKrahnResult fk = faber_krahn(m, {{0.0, 0.0}, 1.2}, {});
  for (double r : {0.3, 0.6, 0.9, 1.2}) {
    const double v = std::pow(pole_ball_volume(m, r).volume, 0.5) *
                     lambda1_pole_ball(m, r).lambda1;
    CHECK(fk.value <= v * (1 + 1e-12));
  }
}

TEST_CASE("sobolev audit") {
  BumpFamily fam;
  fam.centers_s = {0.3, 0.6, 1.0};
  fam.widths = {0.1, 0.25, 0.5};

  SUBCASE("flat cap with a sufficient A passes") {
    const WarpedMetric m = make_euclidean_cap(2.0, 400);
    const EstimateReport rep = sobolev_audit(m, {0.1, 1.0}, fam);
    CHECK(rep.passed);
    CHECK(rep.margin >= 0.0);
  }

  SUBCASE("absurdly small A is refuted") {
    // a narrow shell bump: lhs ~ sqrt(w) beats the B-term ~ w as w -> 0
    const WarpedMetric m = make_round_sphere(1.0, 1600);
    BumpFamily unit;
    unit.centers_s = {M_PI / 2};
    unit.widths = {0.02};
    const EstimateReport rep = sobolev_audit(m, {1e-9, 1.0}, unit);
    CHECK(!rep.passed);
    CHECK(rep.margin < 0.0);
    // direct quadrature of the violating bump confirms lhs > rhs
    CHECK(rep.lhs > rep.rhs);
  }

  SUBCASE("constant rescaling of u preserves the verdict") {
    // both sides are homogeneous of degree 2, so scaling u cannot flip a
    // verdict; verified by direct evaluation with amplitude lambda
    const WarpedMetric m = make_round_sphere(1.0, 200);
    const Eigen::ArrayXd s = m.arclength();
    const Eigen::ArrayXd u = (-((s - 1.0) / 0.4).square()).exp();
    const Eigen::ArrayXd us = -2.0 * (s - 1.0) / 0.16 * u;
    auto sides = [&](double amp) {
      const double lhs = std::sqrt(
          pole_ball_integral(m, (amp * u).pow(4), 1e300));
      const double rhs =
          0.1 * pole_ball_integral(m, (amp * us).square() +
                                          3.0 * (amp * u).square(), 1e300) +
          pole_ball_integral(m, (amp * u).square(), 1e300);
      return rhs - lhs;
    };
    CHECK(std::signbit(sides(1.0)) == std::signbit(sides(7.5)));
    CHECK(std::signbit(sides(1.0)) == std::signbit(sides(0.01)));
  }

  SUBCASE("zero test function is non-violating") {
    const WarpedMetric m = make_round_sphere(1.0, 200);
    const Eigen::ArrayXd z = Eigen::ArrayXd::Zero(m.size());
    CHECK(pole_ball_integral(m, z, 1e300) == 0.0);  // both sides vanish
  }

  SUBCASE("bad constants are rejected") {
    const WarpedMetric m = make_round_sphere(1.0, 200);
    CHECK_THROWS_AS(sobolev_audit(m, {-1.0, 1.0}, fam), parameter_error);
    CHECK_THROWS_AS(sobolev_audit(m, {1.0, 0.5}, fam), parameter_error);
  }
}

TEST_CASE("refinement convergence of the radial eigenvalue") {
  auto err = [](int nodes) {
    const WarpedMetric m = make_euclidean_cap(1.0, nodes);
    return std::abs(lambda1_pole_ball(m, 0.5).lambda1 -
                    kBessel11 * kBessel11 / 0.25);
  };
  const double e1 = err(200), e2 = err(400);
  CHECK(std::log2(e1 / e2) >= 1.8);
}
