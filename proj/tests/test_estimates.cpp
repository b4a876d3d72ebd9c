#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ricci/estimates.hpp"

using namespace ricci;

namespace {

double s4_ball_volume(double r) {
  const double c = std::cos(r);
  return 2.0 * M_PI * M_PI * (2.0 / 3.0 - c + c * c * c / 3.0);
}

// shared shrinking-sphere trajectory, run close to the vanishing time
const Trajectory& sphere_run() {
  static const Trajectory traj = [] {
    FlowController ctl;
    ctl.checkpoint_stride = 2e-4;
    ctl.stop_min_psi = 1e-6;
    ctl.stop_max_rm = 1e6;
    return evolve(make_round_sphere(1.0, 200), ctl);
  }();
  return traj;
}

}  // namespace

TEST_CASE("noncollapse threshold formula") {
  CHECK(noncollapse_threshold(1.0, 1.0, 0.3, 4) == 1.0);
  CHECK(noncollapse_threshold(4.0, 16.0, 0.5, 4) ==
        doctest::Approx(1.0 / 512.0).epsilon(1e-12));
  double prev = 2.0;
  for (double L : {1.0, 10.0, 100.0, 1000.0}) {
    const double r0 = noncollapse_threshold(2.0, L, 0.5, 4);
    CHECK(r0 <= prev);
    prev = r0;
  }
  CHECK_THROWS_AS(noncollapse_threshold(1.0, 1.0, 1.5, 4), parameter_error);
}

TEST_CASE("noncollapse volume bound formula") {
  CHECK(noncollapse_bound({1.0, 1.0}, 4, 1.0) ==
        doctest::Approx(1.0 / (260.0 * 260.0)).epsilon(1e-12));
  // exact r^4 homogeneity
  const double b1 = noncollapse_bound({2.0, 3.0}, 4, 0.4);
  const double b2 = noncollapse_bound({2.0, 3.0}, 4, 0.8);
  CHECK(b2 == doctest::Approx(16.0 * b1).epsilon(1e-14));
  // general form and its precondition
  CHECK(noncollapse_bound_general({1.0, 1.0}, 4, 0.1, 1.0, 0.5) > 0.0);
  CHECK_THROWS_AS(noncollapse_bound_general({1e4, 1.0}, 4, 1.0, 1.0, 0.5),
                  parameter_error);
}

TEST_CASE("noncollapse audit") {
  const SobolevConstants cs{0.1, 1.0};
  const double L = 1e4, sigma = 0.99;
  const double r0 = noncollapse_threshold(cs.A, L, sigma, 4);
  REQUIRE(r0 > 0.25);

  SUBCASE("flat cap passes everywhere") {
    const WarpedMetric m = make_euclidean_cap(1.0, 300);
    const auto reports = noncollapse_audit(m, cs, L, sigma, {{0.0, 0.0}},
                                           {0.05, 0.1, 0.2});
    for (const auto& r : reports) {
      CHECK(!r.skipped);
      CHECK(r.passed);
      // Euclidean volume pi^2 r^4 / 2 dwarfs the bound
      CHECK(r.lhs == doctest::Approx(M_PI * M_PI * std::pow(r.radius, 4) / 2.0)
                         .epsilon(0.01));
    }
  }

  SUBCASE("round sphere passes at small radii") {
    const WarpedMetric m = make_round_sphere(1.0, 300);
    const auto reports = noncollapse_audit(
        m, cs, L, sigma, {{0.0, 0.0}, {M_PI / 2, 0.5}}, {0.1, 0.2});
    for (const auto& r : reports) {
      CHECK(!r.skipped);
      CHECK(r.passed);
    }
  }

  SUBCASE("radius above the threshold is skipped") {
    const WarpedMetric m = make_round_sphere(1.0, 300);
    const auto reports =
        noncollapse_audit(m, cs, L, sigma, {{0.0, 0.0}}, {2.0 * r0});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].skipped);
    CHECK(!reports[0].passed);
  }
}

TEST_CASE("noninflate bound formula") {
  NonInflateConstants k;  // all exponents zero, c1 = C0 = kappa = 1
  CHECK(noninflate_bound(k, 4, 1.0, 2.0) == doctest::Approx(5.0).epsilon(1e-12));
  // grows faster than r^4 (prefactor increases with r)
  const double v1 = noninflate_bound(k, 4, 0.5, 2.0);
  const double v2 = noninflate_bound(k, 4, 1.0, 2.0);
  CHECK(v2 >= 16.0 * v1);
  CHECK(v2 <= 16.0 * v1 * (1.0 + k.C0 * std::pow(2.0, 2.0)) /
                  (1.0 + k.C0 * std::pow(1.25, 2.0)) * (1 + 1e-12));
  // kappa monotonicity
  NonInflateConstants kk = k;
  kk.E = 2.0;
  const double a = noninflate_bound(kk, 4, 1.0, 2.0);
  kk.kappa = 5.0;
  CHECK(noninflate_bound(kk, 4, 1.0, 2.0) < a);
  CHECK_THROWS_AS(noninflate_bound(k, 4, 2.0, 2.0), parameter_error);
}

TEST_CASE("noninflate audit") {
  SUBCASE("flat cap ratio is the Euclidean constant") {
    Trajectory flat;
    flat.checkpoints.push_back(make_euclidean_cap(1.0, 300));
    flat.times.push_back(0.0);
    // flat space saturates the upper bound, so give it quadrature headroom
    const auto reports = noninflate_audit(flat, {{0.0, 0.0}}, {0.05, 0.1, 0.2},
                                          0.0, M_PI * M_PI / 2.0 * 1.01);
    for (const auto& r : reports) {
      CHECK(r.passed);
      if (r.name == "noninflate")
        CHECK(r.lhs == doctest::Approx(M_PI * M_PI / 2.0).epsilon(0.01));
      if (r.name == "noninflate-fitted")
        CHECK(r.params.at("fitted_sigma1") ==
              doctest::Approx(M_PI * M_PI / 2.0).epsilon(0.01));
    }
  }

  SUBCASE("sphere ratios are below Euclidean and decreasing in r") {
    const WarpedMetric m = make_round_sphere(1.0, 300);
    double prev = M_PI * M_PI / 2.0 * (1 + 1e-9);
    for (double r : {0.3, 0.8, 1.3, 1.8}) {
      const double ratio = ball_volume(m, {{0.0, 0.0}, r}).volume / std::pow(r, 4);
      CHECK(ratio == doctest::Approx(s4_ball_volume(r) / std::pow(r, 4))
                         .epsilon(1e-3));
      CHECK(ratio < prev);
      prev = ratio;
    }
  }

  SUBCASE("self-similar scale invariance of the fitted ratio") {
    const Trajectory& traj = sphere_run();
    const double base = ball_volume(traj.front(), {{0.0, 0.0}, 0.5}).volume / 0.0625;
    for (size_t k = 0; k < traj.checkpoints.size(); k += 100) {
      const double lam = std::sqrt(1.0 - 6.0 * traj.times[k]);
      const double r = 0.5 * lam;
      const double ratio =
          ball_volume(traj.checkpoints[k], {{0.0, 0.0}, r}).volume /
          std::pow(r, 4);
      CHECK(ratio == doctest::Approx(base).epsilon(0.01));
    }
  }
}

TEST_CASE("spacetime ricci audit") {
  SUBCASE("window validation") {
    SpaceTimeWindow w;
    w.S = 0.0;
    w.V = 2.0;  // Y sqrt(V-S) > 1
    CHECK_THROWS_AS(w.validate(), parameter_error);
    w.V = 0.5;
    w.alpha = 0.2;  // >= 1/12
    CHECK_THROWS_AS(w.validate(), parameter_error);
  }

  SUBCASE("static flat trajectory is degenerate") {
    Trajectory flat;
    for (int k = 0; k < 3; ++k) {
      WarpedMetric m = make_euclidean_cap(1.0, 300);
      m.time = 0.05 * k;
      flat.checkpoints.push_back(m);
      flat.times.push_back(m.time);
    }
    SpaceTimeWindow w;
    w.center = {0.3, 0.0};
    w.S = 0.0;
    w.V = 0.1;
    w.Y = 2.0;
    const EstimateReport rep = spacetime_ricci_audit(flat, w);
    CHECK(rep.passed);
    CHECK(rep.lhs < 1e-10);  // curvature is pure roundoff
  }

  SUBCASE("self-similar exponent on the shrinking sphere") {
    const Trajectory& traj = sphere_run();
    SpaceTimeWindow w;
    w.center = {0.0, 0.0};
    w.V = traj.times.back();
    w.S = w.V - 0.01;
    w.Y = 10.0;
    w.alpha = 0.05;
    const EstimateReport rep = spacetime_ricci_audit(traj, w);
    CHECK(rep.passed);
    REQUIRE(rep.params.count("e_star") == 1);
    const double a3 = std::pow(w.alpha, 3);
    CHECK(std::abs(rep.params.at("e_star") - (1.0 - a3)) <= 0.05);
  }

  SUBCASE("rescaling multiplies the integral by C^{1-alpha^3}") {
    const Trajectory& traj = sphere_run();
    const double C = 4.0;
    Trajectory scaled;
    for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
      scaled.checkpoints.push_back(rescale(traj.checkpoints[k], C));
      scaled.times.push_back(C * traj.times[k]);
    }
    // same Y in both windows keeps the geometric region the rescaled ball
    SpaceTimeWindow w;
    w.center = {0.0, 0.0};
    w.V = traj.times.back();
    w.S = w.V - 0.009;
    w.Y = 5.0;
    w.alpha = 0.05;
    SpaceTimeWindow ws = w;
    ws.V = C * w.V;
    ws.S = C * w.S;
    const double lhs = spacetime_ricci_audit(traj, w).lhs;
    const double lhs_scaled = spacetime_ricci_audit(scaled, ws).lhs;
    const double a3 = std::pow(w.alpha, 3);
    CHECK(lhs_scaled == doctest::Approx(std::pow(C, 1.0 - a3) * lhs).epsilon(0.02));
  }
}

TEST_CASE("ricci4 window audit") {
  SUBCASE("preconditions") {
    const Trajectory& traj = sphere_run();
    CHECK_THROWS_AS(ricci4_window_audit(traj, {0.0, 0.0}, 0.5, 0.12, 0.05),
                    parameter_error);  // V - 3s <= 0
    CHECK_THROWS_AS(ricci4_window_audit(traj, {0.0, 0.0}, 0.5, 0.1, 1.5),
                    parameter_error);
  }

  SUBCASE("flat static data gives zero") {
    Trajectory flat;
    for (int k = 0; k <= 10; ++k) {
      WarpedMetric m = make_euclidean_cap(1.0, 300);
      m.time = 0.02 * k;
      flat.checkpoints.push_back(m);
      flat.times.push_back(m.time);
    }
    const EstimateReport rep =
        ricci4_window_audit(flat, {0.3, 0.0}, 0.2, 0.2, 0.05);
    CHECK(rep.lhs < 1e-10);
    CHECK(rep.params.at("c1_hat") < 1e-10);
    CHECK(rep.passed);
  }

  SUBCASE("self-similar window: closed-form integrand, scale-stable constant") {
    // windows riding the singularity, with the ball covering the whole
    // shrinking sphere: lhs has the closed form of int |Ric|^4 Vol dt
    const Trajectory& traj = sphere_run();
    const double V = traj.times.back(), s = 0.02, r = 2.0;
    const EstimateReport rep = ricci4_window_audit(traj, {0.0, 0.0}, r, V, s);
    auto primitive = [](double t) { return 1.0 / (6.0 * (1.0 - 6.0 * t)); };
    const double vol0 = 8.0 * M_PI * M_PI / 3.0;
    const double oracle =
        1296.0 * vol0 * (primitive(V - s) - primitive(V - 2.0 * s));
    CHECK(rep.lhs == doctest::Approx(oracle).epsilon(0.01));
    // the fitted constant drifts only by 2^alpha under window halving
    REQUIRE(rep.params.count("c1_hat_half") == 1);
    CHECK(rep.params.at("c1_hat_half") / rep.params.at("c1_hat") ==
          doctest::Approx(std::pow(2.0, 0.05)).epsilon(0.08));
  }
}

TEST_CASE("volume comparison audit") {
  SUBCASE("sphere: monotone ratio, zero rhs") {
    const WarpedMetric m = make_round_sphere(1.0, 600);
    const auto reports = volume_comparison_audit(m, {0.0, 0.0}, 4.0,
                                                 {0.5, 1.0, 1.5, 2.0});
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      CHECK(r.lhs < 0.0);  // Bishop-Gromov strict monotonicity
      CHECK(r.rhs == 0.0);
      CHECK(r.passed);
    }
    // closed-form area-ratio oracle at the first pair; the central-diff
    // area estimate limits the attainable accuracy
    const double p = 4.0, expo = 1.0 / (2 * p - 1);
    auto f = [](double t) {
      return 2.0 * M_PI * M_PI * std::pow(std::sin(t), 3) / std::pow(t, 3);
    };
    const double oracle = std::pow(f(1.0), expo) - std::pow(f(0.5), expo);
    CHECK(reports[0].lhs == doctest::Approx(oracle).epsilon(0.2));
  }

  SUBCASE("flat cap: equality case") {
    const WarpedMetric m = make_euclidean_cap(1.0, 300);
    const auto reports =
        volume_comparison_audit(m, {0.0, 0.0}, 3.0, {0.2, 0.4, 0.6});
    // the discrete area ratio wobbles around the exact equality
    for (const auto& r : reports) CHECK(std::abs(r.lhs) < 0.01);
  }

  SUBCASE("fitted constant shrinks with the negative-Ricci perturbation") {
    auto fitted = [](double neck_radius) {
      const WarpedMetric m =
          make_dumbbell(1.0, neck_radius, 8.0, 0.8, 1, 600);
      const auto reports = volume_comparison_audit(
          m, {0.0, 0.0}, 4.0, {1.0, 2.0, 3.0, 4.0, 5.0});
      double c2 = 0.0;
      for (const auto& r : reports)
        if (r.params.count("c2_hat")) c2 = std::max(c2, r.params.at("c2_hat"));
      return c2;
    };
    const double strong = fitted(0.55);
    const double weak = fitted(0.9);
    CHECK(std::isfinite(strong));
    CHECK(weak < strong);
  }

  SUBCASE("p below the admissible range is rejected") {
    const WarpedMetric m = make_round_sphere(1.0, 100);
    CHECK_THROWS_AS(volume_comparison_audit(m, {0.0, 0.0}, 1.5, {0.3, 0.6}),
                    parameter_error);
  }
}

TEST_CASE("annulus component counting") {
  SUBCASE("sphere annuli are connected") {
    const WarpedMetric m = make_round_sphere(1.0, 200);
    CHECK(annulus_components(m, {0.0, 0.0}, 1.0, 2.0) == 1);
    CHECK(annulus_components(m, {M_PI / 2, 0.4}, 0.5, 1.5) == 1);
    // empty annulus beyond the diameter
    CHECK(annulus_components(m, {0.0, 0.0}, 4.0, 5.0) == 0);
  }

  SUBCASE("dumbbell annulus straddling the far bulb") {
    const WarpedMetric m = make_dumbbell(1.0, 0.25, 8.0, 0.6, 1, 400);
    const double L = m.axis_length();
    CHECK(annulus_components(m, {0.0, 0.0}, 0.75 * L, 1.1 * L) == 1);
  }

  SUBCASE("annulus around the neck splits into the two bulb shells") {
    // from the neck center, wrapping the fiber costs at most pi*psi_neck
    // (about 0.8), so the annulus 1.5 <= d <= 2.5 cannot cross the neck
    // and falls apart into one shell per bulb
    const WarpedMetric m = make_dumbbell(1.0, 0.25, 8.0, 0.6, 1, 400);
    const double mid = 0.5 * m.axis_length();
    const int n1 = annulus_components(m, {mid, 0.0}, 1.5, 2.5, 128);
    CHECK(n1 == 2);
    // stable under doubling of the fiber resolution
    CHECK(annulus_components(m, {mid, 0.0}, 1.5, 2.5, 256) == n1);
  }
}

TEST_CASE("riemann L2 is constant along the self-similar flow") {
  const Trajectory& traj = sphere_run();
  const double base = riemann_l2(traj.front());
  for (size_t k = 0; k < traj.checkpoints.size(); k += 150)
    CHECK(riemann_l2(traj.checkpoints[k]) == doctest::Approx(base).epsilon(0.005));
}

TEST_CASE("report lhs stability under mesh doubling") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  const SobolevConstants cs{0.1, 1.0};
  const auto r1 = noncollapse_audit(m, cs, 1e4, 0.99, {{M_PI / 2, 0.7}}, {0.25});
  const WarpedMetric m2 = make_round_sphere(1.0, 400);
  const auto r2 = noncollapse_audit(m2, cs, 1e4, 0.99, {{M_PI / 2, 0.7}}, {0.25});
  REQUIRE(r1.size() == 1);
  REQUIRE(r2.size() == 1);
  const double bound = QuotientMesh(m, 192).error_bound();
  CHECK(std::abs(r1[0].lhs - r2[0].lhs) < bound * 4.0 * std::pow(0.25, 3));
}
