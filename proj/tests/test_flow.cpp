#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ricci/flow.hpp"
#include "ricci/quotient.hpp"

using namespace ricci;

TEST_CASE("preset dispatcher") {
  const WarpedMetric s = make_preset("round_sphere", {{"radius", 1.0}});
  CHECK(curvature(s).scalar(200) == doctest::Approx(12.0).epsilon(1e-3));
  const WarpedMetric c = make_preset("euclidean_cap", {{"radius", 1.0}});
  CHECK(curvature(c).scalar.abs().maxCoeff() < 1e-8);
  const WarpedMetric d = make_preset(
      "dumbbell", {{"bulb_radius", 1.0}, {"neck_radius", 0.2}, {"nodes", 600}});
  CHECK_NOTHROW(d.validate());
  CHECK_THROWS_AS(make_preset("torus", {}), parameter_error);
}

TEST_CASE("single step against the shrinking sphere") {
  const WarpedMetric m = make_round_sphere(1.0, 400);
  const double dt = 1e-4;
  const WarpedMetric m1 = step(m, dt);
  // closed form: g(t) = (1-6t) g0, so psi scales by sqrt(1-6dt)
  const double scale = std::sqrt(1.0 - 6.0 * dt);
  for (int i = 1; i + 1 < m.size(); i += 37)
    CHECK(m1.psi(i) / m.psi(i) == doctest::Approx(scale).epsilon(1e-6));
  CHECK(m1.phi(200) / m.phi(200) == doctest::Approx(scale).epsilon(1e-6));
  CHECK(curvature(m1).scalar(200) ==
        doctest::Approx(12.0 / (1.0 - 6.0 * dt)).epsilon(1e-3));

  CHECK(step(m, 0.0).psi(100) == m.psi(100));
}

TEST_CASE("exact neck mode of a capped cylinder") {
  // mid-section psi == rho: d(psi)/dt = -(n-2)/psi there
  const double rho = 0.5;
  const WarpedMetric m = make_cylinder_capped(rho, 6.0, 600);
  const double dt = 1e-5;
  const WarpedMetric m1 = step(m, dt);
  CHECK(m1.psi(300) == doctest::Approx(rho - 2.0 * dt / rho).epsilon(1e-6));
}

TEST_CASE("flat data is a fixed point") {
  const WarpedMetric m = make_euclidean_cap(1.0, 400);
  const WarpedMetric m1 = step(m, 1e-6);
  const CurvatureField c0 = curvature(m);
  const CurvatureField c1 = curvature(m1);
  CHECK((c1.rm_norm - c0.rm_norm).abs().maxCoeff() < 1e-10);
  CHECK((m1.psi - m.psi).abs().maxCoeff() < 1e-10);
}

TEST_CASE("step error handling") {
  const WarpedMetric m = make_cylinder_capped(0.1, 2.0, 400);
  // giant dt drives the thin neck through zero
  CHECK_THROWS_AS(step(m, 0.1), singularity_crossed_error);
}

TEST_CASE("shrinking sphere trajectory matches the closed form") {
  FlowController ctl;
  ctl.checkpoint_stride = 0.01;
  ctl.stop_min_psi = 1e-4;
  const WarpedMetric m0 = make_round_sphere(1.0, 400);
  const Trajectory traj = evolve(m0, ctl);

  REQUIRE(traj.checkpoints.size() >= 10);
  for (size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] > 0.15) break;
    const WarpedMetric& m = traj.checkpoints[k];
    const double scale = std::sqrt(1.0 - 6.0 * traj.times[k]);
    for (int i = 1; i + 1 < m.size(); i += 23)
      CHECK(m.psi(i) / m0.psi(i) == doctest::Approx(scale).epsilon(1e-4));
  }

  // singular-time estimate brackets 1/6
  REQUIRE(traj.singular_time_estimate.has_value());
  CHECK(*traj.singular_time_estimate == doctest::Approx(1.0 / 6.0).epsilon(0.03));
  CHECK(std::abs(*traj.singular_time_estimate - 1.0 / 6.0) < 0.005);

  // volume derivative identity dV/dt = -int R dV, finite-differenced
  for (size_t k = 1; k + 1 < traj.checkpoints.size(); ++k) {
    if (traj.times[k] > 0.12) break;
    const double dv = (total_volume(traj.checkpoints[k + 1]) -
                       total_volume(traj.checkpoints[k - 1])) /
                      (traj.times[k + 1] - traj.times[k - 1]);
    const double rint = scalar_lp(traj.checkpoints[k], 1.0);
    CHECK(dv == doctest::Approx(-rint).epsilon(0.02));
  }
}

TEST_CASE("trajectory error shrinks with order >= 1.8 under grid doubling") {
  auto run_error = [](int nodes) {
    FlowController ctl;
    ctl.checkpoint_stride = 0.06;
    ctl.max_steps = 200000;
    const WarpedMetric m0 = make_round_sphere(1.0, nodes);
    FlowController stop = ctl;
    Trajectory traj = evolve(m0, ctl);
    double worst = 0.0;
    size_t k = 1;  // checkpoint at t = 0.06
    const double scale = std::sqrt(1.0 - 6.0 * traj.times[k]);
    for (int i = 1; i + 1 < m0.size(); ++i)
      worst = std::max(worst,
                       std::abs(traj.checkpoints[k].psi(i) / m0.psi(i) - scale));
    return worst;
  };
  const double e1 = run_error(100);
  const double e2 = run_error(200);
  CHECK(std::log2(e1 / e2) >= 1.8);
}

TEST_CASE("rescaling maps solutions to solutions") {
  const WarpedMetric m = make_round_sphere(1.0, 200);
  const double C = 3.0, dt = 1e-4;
  const WarpedMetric a = rescale(step(m, dt), C);
  const WarpedMetric b = step(rescale(m, C), C * dt);
  CHECK((a.psi - b.psi).abs().maxCoeff() < 1e-8);
  CHECK((a.phi - b.phi).abs().maxCoeff() < 1e-8);
  CHECK(a.time == doctest::Approx(b.time));
}

TEST_CASE("dumbbell neckpinch stops at the neck") {
  FlowController ctl;
  ctl.stop_min_psi = 0.01;
  ctl.checkpoint_stride = 2e-4;
  const WarpedMetric m0 = make_dumbbell(1.0, 0.15, 8.0, 0.6, 1, 400);
  const Trajectory traj = evolve(m0, ctl);
  CHECK(traj.stop_reason == StopReason::min_psi);
  REQUIRE(traj.singular_time_estimate.has_value());
  // the neck dies long before the bulbs could shrink away (~1/6)
  CHECK(*traj.singular_time_estimate < 1.0 / 6.0);
  CHECK(*traj.singular_time_estimate > 0.0);
  // cylinder-mode estimate T ~ rho^2/4
  CHECK(*traj.singular_time_estimate < 4.0 * 0.15 * 0.15);
}

TEST_CASE("hypothesis monitoring") {
  FlowController ctl;
  ctl.checkpoint_stride = 0.01;
  const Trajectory traj = evolve(make_round_sphere(1.0, 200), ctl);

  SUBCASE("tight L is violated immediately") {
    const double sigma = 0.5;
    // closed form at t: int |R|^{2.5} dV = 12^{2.5} (1-6t)^{-2.5} * V(t),
    // V(t) = (8pi^2/3)(1-6t)^2; already ~2400 at t=0
    const HypothesisReport rep = monitor_hypotheses(traj, sigma, 100.0);
    CHECK(!rep.passed);
    REQUIRE(rep.first_violation_time.has_value());
    CHECK(*rep.first_violation_time == traj.times.front());
    const double vol = 8.0 * M_PI * M_PI / 3.0;
    CHECK(rep.lp_sup >= std::pow(12.0, 2.5) * vol /
                            std::sqrt(1.0 - 6.0 * traj.times.back()) * 0.5);
  }

  SUBCASE("generous L passes, R stays positive") {
    const HypothesisReport rep = monitor_hypotheses(traj, 0.5, 1e9);
    CHECK(rep.passed);
    CHECK(rep.r_min_over_time > 0.0);
    CHECK(!rep.first_violation_time.has_value());
  }

  SUBCASE("static flat cap is trivial") {
    Trajectory flat;
    flat.checkpoints.push_back(make_euclidean_cap(1.0, 200));
    flat.times.push_back(0.0);
    const HypothesisReport rep = monitor_hypotheses(flat, 0.5, 1.0);
    CHECK(rep.passed);
    CHECK(rep.lp_sup < 1e-6);
  }
}
