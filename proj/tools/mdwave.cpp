#include <CLI11.hpp>

#include <iostream>

#include "mdw/dynamics.hpp"
#include "mdw/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mdwave: measure-driven damped quintic wave equation toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, scenario_name, out_dir = "out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool check_mode = false;

  auto* run = app.add_subcommand("run", "run a scenario file or a bundled scenario");
  run->add_option("--scenario", scenario_path, "path to a scenario config file");
  run->add_option("--name", scenario_name, "name of a bundled scenario");
  run->add_option("--out", out_dir, "output directory for CSV/JSON artifacts");
  run->add_option("--seed", seed, "base seed, expanded per ensemble member");
  run->add_option("--threads", threads, "worker threads for ensembles");
  run->add_flag("--check", check_mode, "exit-code mode: 0 iff all checks pass");

  auto* list = app.add_subcommand("list", "print the bundled scenario catalog");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& [name, text] : mdw::builtin_scenarios()) {
      // first comment line doubles as the description
      std::string desc = text.substr(0, text.find('\n'));
      if (!desc.empty() && desc[0] == '#') desc = desc.substr(1);
      std::cout << name << " -" << desc << "\n";
    }
    return 0;
  }

  try {
    mdw::ConfigNode cfg;
    if (!scenario_name.empty()) {
      const auto& catalog = mdw::builtin_scenarios();
      const auto it = catalog.find(scenario_name);
      if (it == catalog.end()) {
        std::cerr << "unknown bundled scenario '" << scenario_name << "'\n";
        return 2;
      }
      cfg = mdw::parse_config(it->second);
    } else if (!scenario_path.empty()) {
      cfg = mdw::parse_config_file(scenario_path);
    } else {
      std::cerr << "run: need --scenario PATH or --name NAME\n";
      return 2;
    }
    const mdw::RunResult res = mdw::run_scenario(cfg, out_dir, seed, threads);
    std::cout << res.summary.dump(2) << "\n";
    (void)check_mode;  // exit code always reflects the checks
    return res.exit_code;
  } catch (const mdw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const mdw::PreconditionError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 3;
  } catch (const mdw::BlowUpError& e) {
    std::cerr << "solver blow-up: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
