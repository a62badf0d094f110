#pragma once
#include <filesystem>
#include <optional>
#include <string>

#include "hymem/case_studies.hpp"
#include "hymem/serialization.hpp"

namespace hymem {

/// Parsed scenario file. Unknown keys are rejected before any computation.
struct ScenarioConfig {
  std::string system = "example1";
  std::optional<double> h;
  std::optional<double> horizon_t;
  std::optional<long> horizon_j;
  std::optional<Priority> priority;
  std::optional<SelectionPolicy> selection;
  std::optional<std::uint64_t> seed;
  std::optional<int> zeno_guard;
  std::optional<double> event_tol;

  std::string initial_type = "preset";  // preset | constant | csv
  std::vector<double> initial_value;
  std::filesystem::path initial_csv;
  std::uint64_t initial_seed = 1;

  std::string input_type = "preset";  // preset | zero | constant | csv
  std::vector<double> input_value;
  std::filesystem::path input_csv;

  std::optional<json> certificate;  // constant overrides for the wired certificate
  std::filesystem::path output_dir = "out";
  bool csv_traces = false;
};

ScenarioConfig parse_scenario(const json& j);
/// Loads and parses; malformed JSON raises SchemaError with line/column.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// A preset instantiated and ready to run.
struct PresetRuntime {
  std::string name;
  SystemDef sys;
  SimConfig sim;
  MemoryArc initial;
  InputSignal input;
  std::optional<CertificateSpec> cert;
  std::optional<LyapunovFunctional> lkf;   // Krasovskii presets
  std::optional<KLLEnvelope> iss_beta;     // presets with a wired ISS envelope
  std::optional<ComparisonFunction> iss_gamma;
};

PresetRuntime instantiate(const ScenarioConfig& cfg);

/// The checks wired to the preset's certificate, run against a solution.
std::vector<CheckReport> run_suite(const PresetRuntime& rt, const Solution& sol);

// Subcommand entry points. Exit codes: simulate 0 horizon/dead-end, 3 zeno,
// 2 config error; verify 0 pass, 1 violations, 4 all-vacuous, 2 schema;
// report 0 ok, 2 missing file.
int cmd_simulate(const std::filesystem::path& cfg_path);
int cmd_verify(const std::filesystem::path& cfg_path);
int cmd_report(const std::filesystem::path& report_path, bool plot);

/// In-memory default scenario for a preset id (used by the preset subcommands).
json default_scenario(const std::string& system, std::optional<int> example2_case = std::nullopt);

}  // namespace hymem
