#ifndef RICCI_RUNNER_HPP
#define RICCI_RUNNER_HPP

#include "ricci/config.hpp"
#include "ricci/estimates.hpp"
#include "ricci/flow.hpp"

namespace ricci {

/// One audit invocation: a registered name plus its key=value parameters
/// (the config section named after the audit).
struct AuditSpec {
  std::string name;
  ConfigMap params;
};

struct RunConfig {
  std::string scenario = "round_sphere";
  std::map<std::string, double> scenario_params;  // includes "nodes"
  FlowController controller;
  SobolevConstants sobolev;
  NonInflateConstants kernel;
  std::vector<AuditSpec> audits;
  std::string output_dir = "out";
  long seed = 0;
  int threads = 1;
  double resolution_scale = 1.0;
};

/// Registered audit names, in the order they are dispatched and documented.
const std::vector<std::string>& audit_names();

/// Validates section prefixes, preset and audit names.
RunConfig load_run_config(const ConfigMap& c);

/// Evolve the scenario, execute the audits, write the artifact set
/// (manifest, checkpoints/, estimates.csv, verdicts.jsonl, plotdata/).
/// Returns 0 when every non-skipped audit row passes, 2 otherwise; errors
/// throw after flagging the manifest.
int run(const RunConfig& cfg);

/// Re-audit a previously written trajectory directory.
int replay(const std::string& trajectory_dir, const RunConfig& cfg);

Trajectory load_trajectory(const std::string& dir);

/// Stable listings for scripting: "presets", "audits" or "columns".
std::string describe(const std::string& what);

}  // namespace ricci

#endif
