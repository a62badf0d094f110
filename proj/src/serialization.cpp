#include "hymem/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hymem {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string arc_to_csv(const HybridArc& arc) {
  std::string out = "t,j";
  for (int d = 0; d < arc.dim(); ++d) out += ",x" + std::to_string(d);
  out += "\n";
  for (const Segment& s : arc.domain().segments()) {
    const SegmentSamples& g = arc.samples(s.j);
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      out += format_double(g.t[i]);
      out += ",";
      out += std::to_string(s.j);
      for (int d = 0; d < arc.dim(); ++d) {
        out += ",";
        out += format_double(g.x[i][d]);
      }
      out += "\n";
    }
  }
  return out;
}

HybridArc arc_from_csv(const std::string& csv, Interp interp) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty trajectory CSV");
  std::vector<Segment> segs;
  std::vector<SegmentSamples> samp;
  long cur_j = 0;
  bool any = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      vals.push_back(std::stod(line.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    if (vals.size() < 3) throw SchemaError("trajectory CSV row needs t, j and a state");
    const double t = vals[0];
    const long j = static_cast<long>(vals[1]);
    State x(static_cast<int>(vals.size()) - 2);
    for (std::size_t d = 2; d < vals.size(); ++d) x[static_cast<int>(d) - 2] = vals[d];
    if (!any || j != cur_j) {
      segs.push_back({t, t, j});
      samp.emplace_back();
      cur_j = j;
      any = true;
    }
    segs.back().t_hi = t;
    samp.back().t.push_back(t);
    samp.back().x.push_back(std::move(x));
  }
  if (!any) throw SchemaError("trajectory CSV has no samples");
  return HybridArc(validate_domain(std::move(segs)), std::move(samp), interp);
}

json domain_header_json(const HybridArc& arc, double delta) {
  json segs = json::array();
  for (const Segment& s : arc.domain().segments())
    segs.push_back({{"t_lo", s.t_lo}, {"t_hi", s.t_hi}, {"j", s.j}});
  return json{{"delta", delta},
              {"segments", segs},
              {"interpolation", arc.interpolation() == Interp::cubic_hermite ? "cubic-hermite" : "linear"}};
}

void write_arc(const std::filesystem::path& csv_path, const std::filesystem::path& header_path,
               const HybridArc& arc, double delta) {
  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot open " + csv_path.string());
  csv << arc_to_csv(arc);
  std::ofstream hdr(header_path);
  if (!hdr) throw Error("cannot open " + header_path.string());
  hdr << domain_header_json(arc, delta).dump(2) << "\n";
}

HybridArc read_arc(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open " + csv_path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return arc_from_csv(ss.str());
}

json events_json(const Solution& sol) {
  json evs = json::array();
  for (const Event& e : sol.events)
    evs.push_back({{"t", e.t}, {"j", e.j}, {"kind", to_string(e.kind)}});
  return json{{"events", evs}, {"termination", to_string(sol.termination)}};
}

json report_json(const CheckReport& rep) {
  json viols = json::array();
  for (const Violation& v : rep.violations)
    viols.push_back({{"t", v.t},
                     {"j", v.j},
                     {"cond", v.cond},
                     {"lhs", v.lhs},
                     {"rhs", v.rhs},
                     {"margin", v.margin}});
  return json{{"variant", rep.variant},
              {"passed", rep.passed()},
              {"vacuous", rep.vacuous},
              {"samples_checked", rep.samples_checked},
              {"trigger_hits", rep.trigger_hits},
              {"violations", viols},
              {"tolerances", {{"atol", rep.atol}, {"rtol", rep.rtol}}}};
}

json reports_json(const std::vector<CheckReport>& reps) {
  json arr = json::array();
  bool all_pass = true;
  for (const CheckReport& r : reps) {
    arr.push_back(report_json(r));
    all_pass = all_pass && r.passed();
  }
  return json{{"checks", arr}, {"passed", all_pass}};
}

HybridArc rehydrate_derivatives(const SystemDef& sys, const HybridArc& arc, const InputSignal& u) {
  std::vector<Segment> segs = arc.domain().segments();
  std::vector<SegmentSamples> samp;
  samp.reserve(segs.size());
  for (const Segment& s : segs) samp.push_back(arc.samples(s.j));
  for (std::size_t si = 0; si < segs.size(); ++si) {
    SegmentSamples& g = samp[si];
    g.f.assign(g.x.size(), State::Zero(arc.dim()));
    const Segment& s = segs[si];
    if (s.j < 0 || g.t.size() < 2) continue;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      if (g.t[i] < 0.0) continue;
      auto list =
          sys.flow_map(memory_operator(arc, g.t[i], s.j, sys.delta), u.value_at_time(g.t[i]));
      if (!list.empty()) g.f[i] = list.front();
    }
  }
  return HybridArc(validate_domain(std::move(segs)), std::move(samp), Interp::cubic_hermite);
}

std::string plot_csv(const std::vector<double>& tj, const std::vector<double>& value,
                     const std::vector<double>& envelope) {
  std::string out = "tj,value,envelope,margin\n";
  for (std::size_t i = 0; i < tj.size(); ++i) {
    out += format_double(tj[i]);
    out += ",";
    out += format_double(value[i]);
    out += ",";
    out += format_double(envelope[i]);
    out += ",";
    out += format_double(value[i] - envelope[i]);
    out += "\n";
  }
  return out;
}

}  // namespace hymem
