// Scenario runner for the invariant-geodesics library.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "invgeo/scenario.hpp"

using namespace invgeo;

namespace {

int cmd_list() {
  for (const auto& name : builtin_scenario_names()) {
    Scenario sc = builtin_scenario(name);
    std::cout << name << "  -  " << sc.description << "\n";
  }
  return 0;
}

Scenario load_scenario(const std::string& name, const std::string& config_path) {
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file " + config_path);
    Json j = Json::parse(in);
    return Scenario::from_config(j);
  }
  return builtin_scenario(name);
}

void apply_overrides(Scenario& sc, double theta, int seeds, int n_samples, double cap,
                     bool theta_set, bool seeds_set, bool n_set, bool cap_set) {
  if (theta_set) {
    if (sc.name == "sphere_rotation_equator") {
      Vec z(3);
      z << 0, 0, 1;
      sc.isometry = Isometry::sphere_rotation(sc.manifold, z, theta);
      sc.extra["theta"] = theta;
    } else {
      throw ConfigError("--theta only applies to sphere_rotation_equator");
    }
  }
  if (seeds_set)
    for (auto& s : sc.seed_specs) s.count = seeds;
  if (n_set)
    for (auto& s : sc.seed_specs) s.samples = n_samples;
  if (cap_set) sc.search.energy_cap = cap;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isometry-invariant geodesic scenarios"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-scenarios", "list built-in scenarios");

  std::string scenario_name, config_path, outdir = "out";
  double theta = 1.0, cap = 0;
  int seeds = 0, n_samples = 0;
  bool dump_config = false;

  auto* run = app.add_subcommand("run", "run a scenario");
  run->add_option("--scenario", scenario_name, "built-in scenario name");
  run->add_option("--config", config_path, "scenario JSON config file");
  run->add_option("--out", outdir, "output directory");
  auto* theta_opt = run->add_option("--theta", theta, "rotation angle override");
  auto* seeds_opt = run->add_option("--seeds", seeds, "seed count override");
  auto* n_opt = run->add_option("--N", n_samples, "samples per seed override");
  auto* cap_opt = run->add_option("--cap", cap, "energy cap override");
  run->add_flag("--dump-config", dump_config, "print the effective config and exit");

  std::string table_scenario = "torus_flat_classes", table_out = "out";
  auto* table = app.add_subcommand("index-table", "run a scenario and emit its iterate index table");
  table->add_option("--scenario", table_scenario, "built-in scenario name");
  table->add_option("--out", table_out, "output directory");

  std::string bv_out = "out";
  auto* bverify = app.add_subcommand("bangert-verify", "verify the lengthening energy estimate");
  bverify->add_option("--out", bv_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (run->parsed()) {
      if (scenario_name.empty() && config_path.empty())
        throw ConfigError("pass --scenario or --config");
      Scenario sc = load_scenario(scenario_name, config_path);
      apply_overrides(sc, theta, seeds, n_samples, cap, theta_opt->count() > 0,
                      seeds_opt->count() > 0, n_opt->count() > 0, cap_opt->count() > 0);
      if (dump_config) {
        std::cout << sc.to_config().dump(2) << "\n";
        return 0;
      }
      ScenarioReport rep = run_scenario(sc, outdir);
      std::cout << rep.report_text;
      return rep.exit_code;
    }
    if (table->parsed()) {
      Scenario sc = builtin_scenario(table_scenario);
      if (std::find(sc.steps.begin(), sc.steps.end(), "index_table") == sc.steps.end())
        sc.steps.push_back("index_table");
      ScenarioReport rep = run_scenario(sc, table_out);
      std::cout << rep.report_text;
      return rep.exit_code;
    }
    if (bverify->parsed()) {
      Scenario sc = builtin_scenario("bangert_verify");
      ScenarioReport rep = run_scenario(sc, bv_out);
      std::cout << rep.report_text;
      return rep.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
