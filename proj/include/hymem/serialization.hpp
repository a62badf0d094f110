#pragma once
#include <filesystem>
#include <string>

#include "json.hpp"

#include "hymem/report.hpp"
#include "hymem/system_core.hpp"

namespace hymem {

using json = nlohmann::json;

/// Formats a double with 17 significant digits (bit-stable round trip).
std::string format_double(double v);

/// Trajectory CSV: header `t,j,x0..x{n-1}`, one row per sample; a jump shows
/// as consecutive rows with equal t and j incremented.
std::string arc_to_csv(const HybridArc& arc);
HybridArc arc_from_csv(const std::string& csv, Interp interp = Interp::linear);

/// Domain metadata header: {delta, segments: [{t_lo, t_hi, j}], interpolation}.
json domain_header_json(const HybridArc& arc, double delta);
void write_arc(const std::filesystem::path& csv_path, const std::filesystem::path& header_path,
               const HybridArc& arc, double delta);
HybridArc read_arc(const std::filesystem::path& csv_path);

json events_json(const Solution& sol);
json report_json(const CheckReport& rep);
json reports_json(const std::vector<CheckReport>& reps);

/// Re-evaluates the system's flow map along a derivative-less arc so checker
/// verdicts on a reloaded CSV match the in-memory run (selection "first").
HybridArc rehydrate_derivatives(const SystemDef& sys, const HybridArc& arc, const InputSignal& u);

/// Per-sample condition traces for plotting: t+j, V, envelope, margin.
std::string plot_csv(const std::vector<double>& tj, const std::vector<double>& value,
                     const std::vector<double>& envelope);

}  // namespace hymem
