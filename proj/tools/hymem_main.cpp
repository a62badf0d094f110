#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hymem/scenario.hpp"

namespace {

int run_preset(const std::string& system, std::optional<int> case_id, bool verify) {
  using hymem::json;
  const json cfg = hymem::default_scenario(system, case_id);
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() /
      ("hymem-" + cfg["system"].get<std::string>() + "-scenario.json");
  {
    std::ofstream out(tmp);
    out << cfg.dump(2) << "\n";
  }
  return verify ? hymem::cmd_verify(tmp) : hymem::cmd_simulate(tmp);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hymem: hybrid systems with memory - simulation and stability condition checks"};
  app.require_subcommand(1);

  std::string cfg_path;
  auto* sim = app.add_subcommand("simulate", "simulate a scenario, write trajectory + events");
  sim->add_option("config", cfg_path, "scenario JSON")->required();

  std::string vcfg_path;
  auto* ver = app.add_subcommand("verify", "simulate and run the wired certificate checks");
  ver->add_option("config", vcfg_path, "scenario JSON")->required();

  std::string report_path;
  bool plot = false;
  auto* repc = app.add_subcommand("report", "summarize a report.json");
  repc->add_option("report", report_path, "report JSON path")->required();
  repc->add_flag("--plot", plot, "emit plot_data.csv next to the report");

  auto* ex1 = app.add_subcommand("example1", "run the networked-control preset and its checks");
  int case_id = 1;
  auto* ex2 = app.add_subcommand("example2", "run an impulsive switched delay preset");
  ex2->add_option("--case", case_id, "case 1, 2 or 3")->check(CLI::Range(1, 3));

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return hymem::cmd_simulate(cfg_path);
  if (ver->parsed()) return hymem::cmd_verify(vcfg_path);
  if (repc->parsed()) return hymem::cmd_report(report_path, plot);
  if (ex1->parsed()) return run_preset("example1", std::nullopt, true);
  if (ex2->parsed()) return run_preset("example2", case_id, true);
  return 0;
}
