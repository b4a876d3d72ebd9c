// riccilab: evolve a rotationally symmetric 4d Ricci flow scenario and run
// the configured estimate audits.  Exit codes: 0 all audits pass, 2 at least
// one audit fails, 1 configuration or runtime error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ricci/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for rotationally symmetric 4d Ricci flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::string trajectory_dir;
  std::string topic;
  int threads = 1;
  double resolution_scale = 1.0;

  CLI::App* run_cmd = app.add_subcommand("run", "evolve a scenario and audit it");
  run_cmd->add_option("--config", config_path, "key=value config file")->required();
  run_cmd->add_option("--output", output_dir, "artifact directory (overrides output.dir)");
  run_cmd->add_option("--threads", threads, "worker threads");
  run_cmd->add_option("--resolution-scale", resolution_scale,
                      "multiply the configured node count");

  CLI::App* replay_cmd =
      app.add_subcommand("replay", "re-audit a stored trajectory directory");
  replay_cmd->add_option("--config", config_path, "key=value config file")->required();
  replay_cmd->add_option("--trajectory", trajectory_dir,
                         "directory written by a previous run")->required();
  replay_cmd->add_option("--output", output_dir, "artifact directory");
  replay_cmd->add_option("--threads", threads, "worker threads");

  CLI::App* describe_cmd =
      app.add_subcommand("describe", "list presets, audits or csv columns");
  describe_cmd->add_option("topic", topic, "presets | audits | columns")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (describe_cmd->parsed()) {
      std::cout << ricci::describe(topic);
      return 0;
    }
    ricci::RunConfig cfg =
        ricci::load_run_config(ricci::ConfigMap::parse_file(config_path));
    cfg.threads = threads;
    cfg.resolution_scale = resolution_scale;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (replay_cmd->parsed()) return ricci::replay(trajectory_dir, cfg);
    return ricci::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
