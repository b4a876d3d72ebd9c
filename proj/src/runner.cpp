#include "ricci/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "ricci/curvature.hpp"
#include "ricci/heat.hpp"
#include "ricci/report.hpp"
#include "ricci/singular.hpp"
#include "ricci/spectral.hpp"

namespace fs = std::filesystem;

namespace ricci {

namespace {

const std::vector<std::string> kPresets = {"round_sphere", "euclidean_cap",
                                           "cylinder_capped", "dumbbell"};

const std::vector<std::string> kAudits = {
    "noncollapse",   "noninflate",        "sobolev",  "riemann-l2",
    "spacetime-ricci", "ricci4-window",   "moser",    "ricci-moser",
    "kernel-bounds", "volume-comparison", "annulus",  "cluster",
    "ct-decay",      "hypothesis"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

size_t nearest_checkpoint(const Trajectory& traj, double t) {
  size_t best = 0;
  for (size_t k = 1; k < traj.times.size(); ++k)
    if (std::abs(traj.times[k] - t) < std::abs(traj.times[best] - t)) best = k;
  return best;
}

std::vector<double> frac_list(const ConfigMap& p, const std::string& key,
                              std::vector<double> fallback) {
  std::vector<double> v = p.get_double_list(key);
  return v.empty() ? fallback : v;
}

// Fractions of the axis length mapped to arclength centers on the metric.
std::vector<QuotientPoint> frac_centers(const WarpedMetric& m,
                                        const std::vector<double>& fracs) {
  std::vector<QuotientPoint> out;
  const double L = m.axis_length();
  for (double f : fracs) out.push_back({f * L, 0.0});
  return out;
}

struct AuditContext {
  const RunConfig& cfg;
  const Trajectory& traj;
  std::vector<EstimateReport>& reports;
  std::vector<std::string>& verdicts;
};

void audit_noncollapse(const AuditContext& cx, const ConfigMap& p) {
  const WarpedMetric& m =
      cx.traj.checkpoints[nearest_checkpoint(cx.traj, p.get_double("at", cx.traj.times.front()))];
  SobolevConstants c = cx.cfg.sobolev;
  c.A = p.get_double("A", c.A);
  c.B = p.get_double("B", c.B);
  const double L = p.get_double("L", 1e4);
  const double sigma = p.get_double("sigma", 0.99);
  const auto centers =
      frac_centers(m, frac_list(p, "centers_frac", {0.0, 0.25, 0.5, 0.75, 1.0}));
  std::vector<double> radii = p.get_double_list("radii");
  if (radii.empty()) radii = {0.05, 0.1, 0.2, 0.3};
  const auto rows = noncollapse_audit(m, c, L, sigma, centers, radii);
  cx.reports.insert(cx.reports.end(), rows.begin(), rows.end());
}

void audit_noninflate(const AuditContext& cx, const ConfigMap& p) {
  const auto centers = frac_centers(
      cx.traj.back(), frac_list(p, "centers_frac", {0.0, 0.5, 1.0}));
  std::vector<double> radii = p.get_double_list("radii");
  if (radii.empty()) radii = {0.1, 0.2, 0.3};
  const double sigma0 = p.get_double("sigma0", 0.0);
  const double sigma1 =
      p.get_double("sigma1", 0.5 * M_PI * M_PI * (1.0 + 1e-3));
  const auto rows = noninflate_audit(cx.traj, centers, radii, sigma0, sigma1);
  cx.reports.insert(cx.reports.end(), rows.begin(), rows.end());
}

void audit_sobolev(const AuditContext& cx, const ConfigMap& p) {
  const WarpedMetric& m =
      cx.traj.checkpoints[nearest_checkpoint(cx.traj, p.get_double("at", cx.traj.times.front()))];
  SobolevConstants c = cx.cfg.sobolev;
  c.A = p.get_double("A", c.A);
  c.B = p.get_double("B", c.B);
  BumpFamily fam;
  const double L = m.axis_length();
  for (double f : frac_list(p, "centers_frac", {0.25, 0.5, 0.75}))
    fam.centers_s.push_back(f * L);
  fam.widths = p.get_double_list("widths");
  if (fam.widths.empty()) fam.widths = {0.2, 0.5};
  cx.reports.push_back(sobolev_audit(m, c, fam));
}

void audit_riemann_l2(const AuditContext& cx, const ConfigMap& p) {
  const double tol = p.get_double("tol", 0.005);
  const double base = riemann_l2(cx.traj.front());
  for (size_t k = 0; k < cx.traj.checkpoints.size(); ++k) {
    const double val = riemann_l2(cx.traj.checkpoints[k]);
    EstimateReport rep =
        make_report("riemann-l2", "riemann-l2-constancy", BoundDirection::upper,
                    std::abs(val / base - 1.0), tol);
    rep.time = cx.traj.times[k];
    rep.params["value"] = val;
    rep.params["base"] = base;
    cx.reports.push_back(rep.finalize());
  }
}

void audit_spacetime_ricci(const AuditContext& cx, const ConfigMap& p) {
  SpaceTimeWindow w;
  w.center = {p.get_double("center_s", 0.0), p.get_double("center_alpha", 0.0)};
  w.V = p.get_double("V", cx.traj.times.back());
  w.S = p.get_double("S", w.V - 0.01);
  w.Y = p.get_double("Y", 10.0);
  w.alpha = p.get_double("alpha", 0.05);
  cx.reports.push_back(spacetime_ricci_audit(cx.traj, w));
}

void audit_ricci4_window(const AuditContext& cx, const ConfigMap& p) {
  const QuotientPoint x{p.get_double("center_s", 0.0),
                        p.get_double("center_alpha", 0.0)};
  const double V = p.get_double("V", cx.traj.times.back());
  const double s = p.get_double("s", 0.02);
  const double r = p.get_double("r", 2.0);
  const double alpha = p.get_double("alpha", 0.05);
  cx.reports.push_back(ricci4_window_audit(cx.traj, x, r, V, s, alpha));
}

MoserParams moser_params(const RunConfig& cfg, const ConfigMap& p, double p_exp) {
  MoserParams mp;
  mp.p = p_exp;
  mp.A = p.get_double("A", cfg.sobolev.A);
  mp.B = p.get_double("B", cfg.sobolev.B);
  mp.alpha_u = p.get_double("alpha_u", mp.alpha_u);
  mp.c1 = p.get_double("c1", mp.c1);
  mp.gamma = p.get_double("gamma", mp.gamma);
  mp.r = p.get_double("r", 1.0);
  return mp;
}

void audit_moser(const AuditContext& cx, const ConfigMap& p) {
  const double r = p.get_double("r", 1.0);
  const double pe = p.get_double("p", 4.0);
  const double t =
      p.get_double("t", std::min(0.05, 0.9 * cx.traj.times.back()));
  const double width = p.get_double("bump_width", 0.5);
  const MoserParams mp = moser_params(cx.cfg, p, pe);
  const Eigen::ArrayXd s = cx.traj.front().arclength();
  const HeatField h =
      solve_heat(cx.traj, {}, (-(s / width).square()).exp(), 0.0);
  cx.reports.push_back(moser_audit(h, cx.traj, {0.0, 0.0}, r, pe, t, mp));
}

void audit_ricci_moser(const AuditContext& cx, const ConfigMap& p) {
  const double r = p.get_double("r", 1.0);
  const double pe = p.get_double("p", 4.0);
  const double t =
      p.get_double("t", std::min(0.05, 0.9 * cx.traj.times.back()));
  const MoserParams mp = moser_params(cx.cfg, p, pe);
  cx.reports.push_back(ricci_moser_audit(cx.traj, {0.0, 0.0}, r, pe, t, mp));
}

void audit_kernel_bounds(const AuditContext& cx, const ConfigMap& p) {
  const double t = p.get_double("t", cx.traj.times.back());
  const size_t kt = nearest_checkpoint(cx.traj, t);
  const size_t kl = nearest_checkpoint(
      cx.traj, p.get_double("l", cx.traj.times.front() +
                                     (cx.traj.times[kt] - cx.traj.times.front()) / 3.0));
  const double l = cx.traj.times[kl];
  const HeatField G =
      solve_conjugate_heat(cx.traj, {0.0, 0.0}, cx.traj.times[kt], l);
  NonInflateConstants k = cx.cfg.kernel;
  const auto [up, lo] =
      kernel_bounds_audit(G, cx.traj, k, {0.0, 0.0}, cx.traj.times[kt], l);
  cx.reports.push_back(up);
  cx.reports.push_back(lo);
}

void audit_volume_comparison(const AuditContext& cx, const ConfigMap& p) {
  const WarpedMetric& m =
      cx.traj.checkpoints[nearest_checkpoint(cx.traj, p.get_double("at", cx.traj.times.front()))];
  const QuotientPoint x{p.get_double("center_s", 0.0),
                        p.get_double("center_alpha", 0.0)};
  const double pe = p.get_double("p", 2.5);
  std::vector<double> ladder = p.get_double_list("r_ladder");
  if (ladder.empty()) ladder = {0.5, 1.0, 1.5, 2.0};
  const int bands = static_cast<int>(p.get_long("bands", 128));
  const auto rows = volume_comparison_audit(m, x, pe, ladder, bands);
  cx.reports.insert(cx.reports.end(), rows.begin(), rows.end());
}

void audit_annulus(const AuditContext& cx, const ConfigMap& p) {
  const WarpedMetric& m =
      cx.traj.checkpoints[nearest_checkpoint(cx.traj, p.get_double("at", cx.traj.times.front()))];
  const QuotientPoint x{p.get_double("center_s", 0.5 * m.axis_length()),
                        p.get_double("center_alpha", 0.0)};
  const double r_in = p.get_double("r_in", 0.5);
  const double r_out = p.get_double("r_out", 1.5);
  const int bands = static_cast<int>(p.get_long("bands", 128));
  const int count = annulus_components(m, x, r_in, r_out, bands);
  const int oracle = annulus_components(m, x, r_in, r_out, 2 * bands);
  EstimateReport rep = make_report("annulus", "annulus-components",
                                   BoundDirection::upper, count, oracle);
  rep.center_s = x.s;
  rep.center_alpha = x.alpha;
  rep.radius = r_out;
  rep.params["r_in"] = r_in;
  rep.params["bands"] = bands;
  rep.finalize();
  rep.passed = count == oracle;  // resolution stability, not an inequality
  if (!rep.passed) rep.note = "component count changes under refinement";
  cx.reports.push_back(rep);
}

void audit_cluster(const AuditContext& cx, const ConfigMap& p) {
  ClassificationParams cp;
  cp.eps0 = p.get_double("eps0", 0.3);
  cp.R_big = p.get_double("R_big", 2.0);
  cp.Lambda = p.get_double("Lambda", 1.0);
  cp.K0 = p.get_double("K0", 1.0);
  cp.N0 = p.get_double("N0", 100.0);
  cp.alpha_bands = static_cast<int>(p.get_long("bands", 64));
  const int index = static_cast<int>(p.get_long("index", 0));
  const double ti =
      cx.traj.times[nearest_checkpoint(cx.traj, p.get_double("t", cx.traj.times.back()))];
  const double T = cx.traj.singular_time_estimate.value_or(ti);

  const auto centers = cluster_singular(cx.traj, ti, cp, index);
  for (const auto& c : centers) {
    nlohmann::json j{{"t", ti}, {"s", c.s}, {"alpha", c.alpha},
                     {"verdict", "cluster-center"}};
    cx.verdicts.push_back(j.dump());
  }

  double min_sep = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < centers.size(); ++a)
    for (size_t b = a + 1; b < centers.size(); ++b)
      min_sep = std::min(min_sep, std::abs(centers[a].s - centers[b].s));
  const double sep = cp.N0 * std::ldexp(1.0, index) * std::sqrt(T - ti);

  EstimateReport rep = make_report("cluster", "cluster-centers",
                                   BoundDirection::upper, centers.size(),
                                   p.get_double("expect_centers", centers.size()));
  rep.time = ti;
  rep.params["separation_required"] = sep;
  if (centers.size() > 1) rep.params["separation_min"] = min_sep;
  rep.finalize();
  rep.passed = static_cast<double>(centers.size()) == rep.rhs &&
               (centers.size() < 2 || min_sep >= sep);
  cx.reports.push_back(rep);

  for (double f : frac_list(p, "points_frac", {0.0, 0.5, 1.0})) {
    const QuotientPoint x{f * cx.traj.front().axis_length(), 0.0};
    const PointVerdict v = classify_point(cx.traj, x, cp);
    nlohmann::json j{{"t", *cx.traj.singular_time_estimate},
                     {"s", x.s},
                     {"alpha", x.alpha},
                     {"verdict", to_string(v.verdict)},
                     {"witness_times", v.witness_times}};
    nlohmann::json ints = nlohmann::json::array();
    for (const auto& row : v.integrals)
      ints.push_back({row.t, row.rm2, row.ricq});
    j["integrals"] = ints;
    cx.verdicts.push_back(j.dump());
  }
}

void audit_ct_decay(const AuditContext& cx, const ConfigMap& p) {
  const BallSpec region{{p.get_double("center_s", 0.0),
                         p.get_double("center_alpha", 0.0)},
                        p.get_double("radius", 1.0)};
  const double t_a = p.get_double("t_a", cx.traj.times.front());
  const double t_b = p.get_double("t_b", cx.traj.times.back());
  const double c0 = p.get_double("c0", 1.0);
  cx.reports.push_back(ct_decay_audit(cx.traj, region, t_a, t_b, c0));
}

void audit_hypothesis(const AuditContext& cx, const ConfigMap& p) {
  const double sigma = p.get_double("sigma", 0.5);
  const double L = p.get_double("L", 100.0);
  const HypothesisReport h = monitor_hypotheses(cx.traj, sigma, L);
  EstimateReport rep = make_report("hypothesis", "lp-curvature-hypothesis",
                                   BoundDirection::upper, h.lp_sup, L);
  rep.params["sigma"] = sigma;
  rep.params["r_min_over_time"] = h.r_min_over_time;
  if (h.first_violation_time)
    rep.params["first_violation_time"] = *h.first_violation_time;
  rep.finalize();
  rep.passed = h.passed;
  if (!h.passed) rep.note = "hypothesis set violated along the run";
  cx.reports.push_back(rep);
}

void dispatch(const AuditContext& cx, const AuditSpec& a) {
  if (a.name == "noncollapse") return audit_noncollapse(cx, a.params);
  if (a.name == "noninflate") return audit_noninflate(cx, a.params);
  if (a.name == "sobolev") return audit_sobolev(cx, a.params);
  if (a.name == "riemann-l2") return audit_riemann_l2(cx, a.params);
  if (a.name == "spacetime-ricci") return audit_spacetime_ricci(cx, a.params);
  if (a.name == "ricci4-window") return audit_ricci4_window(cx, a.params);
  if (a.name == "moser") return audit_moser(cx, a.params);
  if (a.name == "ricci-moser") return audit_ricci_moser(cx, a.params);
  if (a.name == "kernel-bounds") return audit_kernel_bounds(cx, a.params);
  if (a.name == "volume-comparison") return audit_volume_comparison(cx, a.params);
  if (a.name == "annulus") return audit_annulus(cx, a.params);
  if (a.name == "cluster") return audit_cluster(cx, a.params);
  if (a.name == "ct-decay") return audit_ct_decay(cx, a.params);
  if (a.name == "hypothesis") return audit_hypothesis(cx, a.params);
  throw config_error("unknown audit: " + a.name);
}

void write_series(const fs::path& path, const Trajectory& traj,
                  const std::function<double(const WarpedMetric&)>& f) {
  std::ofstream out(path);
  for (size_t k = 0; k < traj.checkpoints.size(); ++k)
    out << fmt(traj.times[k]) << ' ' << fmt(f(traj.checkpoints[k])) << '\n';
}

void write_manifest(const fs::path& path,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ofstream out(path);
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

// Execute the audits and write the artifact set; shared by run and replay.
int emit(const RunConfig& cfg, const Trajectory& traj) {
  const fs::path out(cfg.output_dir);
  fs::create_directories(out / "checkpoints");
  fs::create_directories(out / "plotdata");

  std::vector<std::pair<std::string, std::string>> mf;
  mf.push_back({"scenario.kind", cfg.scenario});
  for (const auto& [k, v] : cfg.scenario_params)
    mf.push_back({"scenario." + k, fmt(v)});
  mf.push_back({"seed", std::to_string(cfg.seed)});
  mf.push_back({"trajectory.checkpoints",
                std::to_string(traj.checkpoints.size())});
  mf.push_back({"trajectory.t_first", fmt(traj.times.front())});
  mf.push_back({"trajectory.t_last", fmt(traj.times.back())});
  mf.push_back({"trajectory.stop_reason", to_string(traj.stop_reason)});
  if (traj.singular_time_estimate)
    mf.push_back(
        {"trajectory.singular_time_estimate", fmt(*traj.singular_time_estimate)});
  std::string anames;
  for (const auto& a : cfg.audits)
    anames += (anames.empty() ? "" : ",") + a.name;
  if (!anames.empty()) mf.push_back({"audits", anames});

  try {
    // checkpoints in the geometry snapshot format, plus a plain index
    {
      std::ofstream idx(out / "checkpoints" / "index.txt");
      for (size_t k = 0; k < traj.checkpoints.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "ckpt_%05zu.dat", k);
        save_snapshot(traj.checkpoints[k], (out / "checkpoints" / name).string());
        idx << k << ' ' << fmt(traj.times[k]) << ' ' << name << '\n';
      }
    }

    write_series(out / "plotdata" / "min_psi.dat", traj, [](const WarpedMetric& m) {
      double mn = std::numeric_limits<double>::infinity();
      for (int i = 1; i + 1 < m.size(); ++i) mn = std::min(mn, m.psi(i));
      return mn;
    });
    write_series(out / "plotdata" / "max_rm.dat", traj,
                 [](const WarpedMetric& m) { return curvature(m).max_rm(); });
    write_series(out / "plotdata" / "volume.dat", traj,
                 [](const WarpedMetric& m) { return total_volume(m); });
    write_series(out / "plotdata" / "riemann_l2.dat", traj,
                 [](const WarpedMetric& m) { return riemann_l2(m); });

    std::vector<EstimateReport> reports;
    std::vector<std::string> verdicts;
    AuditContext cx{cfg, traj, reports, verdicts};
    for (const auto& a : cfg.audits) dispatch(cx, a);

    write_csv((out / "estimates.csv").string(), reports);
    {
      std::ofstream vf(out / "verdicts.jsonl");
      for (const auto& line : verdicts) vf << line << '\n';
    }

    size_t failed = 0, skipped = 0;
    for (const auto& r : reports) {
      if (r.skipped) ++skipped;
      else if (!r.passed) ++failed;
    }
    const int code = failed == 0 ? 0 : 2;
    mf.push_back({"reports.total", std::to_string(reports.size())});
    mf.push_back({"reports.failed", std::to_string(failed)});
    mf.push_back({"reports.skipped", std::to_string(skipped)});
    mf.push_back({"exit_code", std::to_string(code)});
    mf.push_back({"status", "complete"});
    write_manifest(out / "manifest", mf);
    return code;
  } catch (const std::exception& e) {
    mf.push_back({"status", "error"});
    mf.push_back({"error", e.what()});
    write_manifest(out / "manifest", mf);
    throw;
  }
}

}  // namespace

const std::vector<std::string>& audit_names() { return kAudits; }

RunConfig load_run_config(const ConfigMap& c) {
  RunConfig cfg;
  cfg.scenario = c.get_string("scenario.kind", cfg.scenario);
  if (std::find(kPresets.begin(), kPresets.end(), cfg.scenario) == kPresets.end())
    throw config_error("unknown scenario preset: " + cfg.scenario);

  for (const auto& [k, v] : c.section("scenario"))
    if (k != "kind") cfg.scenario_params[k] = c.get_double("scenario." + k, 0.0);
  cfg.scenario_params["nodes"] =
      static_cast<double>(c.get_long("grid.nodes", 400));

  cfg.controller.cfl_fraction =
      c.get_double("controller.cfl_fraction", cfg.controller.cfl_fraction);
  cfg.controller.max_steps =
      c.get_long("controller.max_steps", cfg.controller.max_steps);
  cfg.controller.stop_min_psi =
      c.get_double("controller.stop_min_psi", cfg.controller.stop_min_psi);
  cfg.controller.stop_max_rm =
      c.get_double("controller.stop_max_rm", cfg.controller.stop_max_rm);
  cfg.controller.checkpoint_stride =
      c.get_double("controller.checkpoint_stride", cfg.controller.checkpoint_stride);
  cfg.controller.validate();

  cfg.sobolev.A = c.get_double("constants.A", cfg.sobolev.A);
  cfg.sobolev.B = c.get_double("constants.B", cfg.sobolev.B);
  cfg.kernel.c1 = c.get_double("constants.c1", cfg.kernel.c1);
  cfg.kernel.c2 = c.get_double("constants.c2", cfg.kernel.c2);
  cfg.kernel.C0 = c.get_double("constants.C0", cfg.kernel.C0);
  cfg.kernel.alpha_J = c.get_double("constants.alpha_J", cfg.kernel.alpha_J);
  cfg.kernel.beta_J = c.get_double("constants.beta_J", cfg.kernel.beta_J);
  cfg.kernel.B_low = c.get_double("constants.B_low", cfg.kernel.B_low);
  cfg.kernel.E = c.get_double("constants.E", cfg.kernel.E);
  cfg.kernel.kappa = c.get_double("constants.kappa", cfg.kernel.kappa);

  for (const std::string& name : c.get_list("audits")) {
    if (std::find(kAudits.begin(), kAudits.end(), name) == kAudits.end())
      throw config_error("unknown audit: " + name);
    AuditSpec spec;
    spec.name = name;
    for (const auto& [k, v] : c.section(name)) spec.params.set(k, v);
    cfg.audits.push_back(std::move(spec));
  }

  cfg.output_dir = c.get_string("output.dir", cfg.output_dir);
  cfg.seed = c.get_long("seed", cfg.seed);

  // reject unknown top-level sections so typos fail loudly
  for (const auto& [k, v] : c.entries()) {
    const std::string head = k.substr(0, k.find('.'));
    static const std::vector<std::string> known = {"scenario", "grid",
                                                   "controller", "constants",
                                                   "output", "seed", "audits"};
    if (std::find(known.begin(), known.end(), head) != known.end()) continue;
    if (std::find(kAudits.begin(), kAudits.end(), head) != kAudits.end())
      continue;
    throw config_error("unknown config key: " + k);
  }
  return cfg;
}

int run(const RunConfig& cfg) {
  RunConfig eff = cfg;  // manifest records the effective node count
  eff.scenario_params["nodes"] = std::max(
      8.0, std::round(eff.scenario_params["nodes"] * eff.resolution_scale));
  const WarpedMetric m0 = make_preset(eff.scenario, eff.scenario_params);
  const Trajectory traj = evolve(m0, eff.controller);
  return emit(eff, traj);
}

Trajectory load_trajectory(const std::string& dir) {
  const fs::path base(dir);
  std::ifstream idx(base / "checkpoints" / "index.txt");
  if (!idx)
    throw config_error("not a trajectory directory (missing checkpoints/index.txt): " + dir);
  Trajectory traj;
  size_t k;
  double t;
  std::string name;
  while (idx >> k >> t >> name) {
    traj.checkpoints.push_back(
        load_snapshot((base / "checkpoints" / name).string()));
    traj.times.push_back(t);
  }
  if (traj.checkpoints.empty())
    throw config_error("empty trajectory directory: " + dir);

  const ConfigMap mf = ConfigMap::parse_file((base / "manifest").string());
  const std::string reason = mf.get_string("trajectory.stop_reason", "completed");
  for (StopReason r : {StopReason::completed, StopReason::min_psi,
                       StopReason::max_rm, StopReason::max_steps,
                       StopReason::instability})
    if (reason == to_string(r)) traj.stop_reason = r;
  if (mf.has("trajectory.singular_time_estimate"))
    traj.singular_time_estimate =
        mf.get_double("trajectory.singular_time_estimate", 0.0);
  return traj;
}

int replay(const std::string& trajectory_dir, const RunConfig& cfg) {
  return emit(cfg, load_trajectory(trajectory_dir));
}

std::string describe(const std::string& what) {
  if (what == "presets")
    return "round_sphere {radius, nodes}\n"
           "euclidean_cap {radius, nodes}\n"
           "cylinder_capped {radius, length, nodes}\n"
           "dumbbell {bulb_radius, neck_radius, length, neck_width, necks, nodes}\n";
  if (what == "audits") {
    std::string out;
    for (const auto& a : kAudits) out += a + "\n";
    return out;
  }
  if (what == "columns") return csv_header() + "\n";
  throw config_error("unknown describe topic: " + what +
                     " (expected presets, audits or columns)");
}

}  // namespace ricci
