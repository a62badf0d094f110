#include "hymem/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

namespace hymem {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError("unknown key '" + it.key() + "' in " + where);
}

std::vector<double> as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

ComparisonFunction parse_comparison(const json& j, const std::string& where) {
  reject_unknown(j, {"type", "k", "p", "points", "class"}, where);
  const std::string type = j.at("type").get<std::string>();
  FnClass cls = FnClass::Kinf;
  if (j.contains("class")) {
    const std::string c = j["class"].get<std::string>();
    if (c == "K") cls = FnClass::K;
    else if (c == "Kinf") cls = FnClass::Kinf;
    else if (c == "PD") cls = FnClass::PD;
    else if (c == "nondecreasing") cls = FnClass::nondecreasing;
    else throw SchemaError("unknown function class '" + c + "' in " + where);
  }
  if (type == "linear") return ComparisonFunction::linear(j.at("k").get<double>(), cls);
  if (type == "power")
    return ComparisonFunction::power(j.at("p").get<double>(),
                                     j.value("k", 1.0), cls);
  if (type == "saturating") return ComparisonFunction::saturating();
  if (type == "zero") return ComparisonFunction::zero();
  if (type == "table") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return ComparisonFunction::table(std::move(pts), cls);
  }
  throw SchemaError("unknown comparison function type '" + type + "' in " + where);
}

}  // namespace

ScenarioConfig parse_scenario(const json& j) {
  reject_unknown(j, {"system", "h", "horizon", "priority", "selection", "seed", "zeno_guard",
                     "event_tol", "initial_memory", "input", "certificate", "output_dir",
                     "csv_traces"},
                 "scenario");
  ScenarioConfig cfg;
  cfg.system = j.at("system").get<std::string>();
  if (j.contains("h")) cfg.h = j["h"].get<double>();
  if (j.contains("horizon")) {
    reject_unknown(j["horizon"], {"t", "j"}, "horizon");
    if (j["horizon"].contains("t")) cfg.horizon_t = j["horizon"]["t"].get<double>();
    if (j["horizon"].contains("j")) cfg.horizon_j = j["horizon"]["j"].get<long>();
  }
  if (j.contains("priority")) {
    const std::string p = j["priority"].get<std::string>();
    if (p == "jump-first") cfg.priority = Priority::jump_first;
    else if (p == "flow-first") cfg.priority = Priority::flow_first;
    else throw SchemaError("priority must be jump-first or flow-first");
  }
  if (j.contains("selection")) {
    reject_unknown(j["selection"], {"policy", "seed"}, "selection");
    const std::string p = j["selection"].value("policy", "first");
    if (p == "first") cfg.selection = SelectionPolicy::first;
    else if (p == "seeded-random") cfg.selection = SelectionPolicy::seeded_random;
    else throw SchemaError("selection.policy must be first or seeded-random");
    if (j["selection"].contains("seed")) cfg.seed = j["selection"]["seed"].get<std::uint64_t>();
  }
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("zeno_guard")) cfg.zeno_guard = j["zeno_guard"].get<int>();
  if (j.contains("event_tol")) cfg.event_tol = j["event_tol"].get<double>();
  if (j.contains("initial_memory")) {
    const json& im = j["initial_memory"];
    reject_unknown(im, {"type", "value", "path", "seed"}, "initial_memory");
    cfg.initial_type = im.value("type", "preset");
    if (im.contains("value")) cfg.initial_value = as_vector(im["value"], "initial_memory.value");
    if (im.contains("path")) cfg.initial_csv = im["path"].get<std::string>();
    if (im.contains("seed")) cfg.initial_seed = im["seed"].get<std::uint64_t>();
  }
  if (j.contains("input")) {
    const json& in = j["input"];
    reject_unknown(in, {"type", "value", "path"}, "input");
    cfg.input_type = in.value("type", "preset");
    if (in.contains("value")) cfg.input_value = as_vector(in["value"], "input.value");
    if (in.contains("path")) cfg.input_csv = in["path"].get<std::string>();
  }
  if (j.contains("certificate")) cfg.certificate = j["certificate"];
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("csv_traces")) cfg.csv_traces = j["csv_traces"].get<bool>();

  if (const char* env = std::getenv("HYMEM_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column diagnostic.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return parse_scenario(j);
}

namespace {

void apply_cert_overrides(CertificateSpec& cert, const json& j) {
  reject_unknown(j, {"variant", "alpha1", "alpha2", "alpha3", "rho", "gamma1", "gamma2", "lambda1",
                     "lambda2", "mu", "eps", "N0", "varpi", "lambda", "atol", "rtol", "deriv_atol"},
                 "certificate");
  if (j.contains("variant")) cert.variant = variant_from_string(j["variant"].get<std::string>());
  if (j.contains("alpha1")) cert.alpha1 = parse_comparison(j["alpha1"], "alpha1");
  if (j.contains("alpha2")) cert.alpha2 = parse_comparison(j["alpha2"], "alpha2");
  if (j.contains("alpha3")) cert.alpha3 = parse_comparison(j["alpha3"], "alpha3");
  if (j.contains("rho")) cert.rho = parse_comparison(j["rho"], "rho");
  if (j.contains("gamma1")) cert.gamma1 = parse_comparison(j["gamma1"], "gamma1");
  if (j.contains("gamma2")) cert.gamma2 = parse_comparison(j["gamma2"], "gamma2");
  if (j.contains("lambda1")) cert.lambda1 = j["lambda1"].get<double>();
  if (j.contains("lambda2")) cert.lambda2 = j["lambda2"].get<double>();
  if (j.contains("mu")) cert.mu = j["mu"].get<double>();
  if (j.contains("eps")) cert.eps = j["eps"].get<double>();
  if (j.contains("N0")) cert.N0 = j["N0"].get<long>();
  if (j.contains("varpi")) cert.varpi = j["varpi"].get<double>();
  if (j.contains("lambda")) cert.lambda_envelope = j["lambda"].get<double>();
  if (j.contains("atol")) cert.atol = j["atol"].get<double>();
  if (j.contains("rtol")) cert.rtol = j["rtol"].get<double>();
  if (j.contains("deriv_atol")) cert.deriv_atol = j["deriv_atol"].get<double>();
}

MemoryArc constant_memory_arc(const State& value, double delta) {
  const double depth = delta + 0.5;
  SegmentSamples g;
  const int npts = 8;
  for (int i = 0; i <= npts; ++i) {
    g.t.push_back(-depth + depth * i / npts);
    g.x.push_back(value);
    g.f.push_back(State::Zero(value.size()));
  }
  g.t.back() = 0.0;
  return MemoryArc(
      HybridArc(validate_domain({{-depth, 0.0, 0}}), {std::move(g)}, Interp::cubic_hermite));
}

InputSignal input_from_csv(const std::filesystem::path& path, int dim) {
  HybridArc arc = read_arc(path);
  if (arc.dim() != dim) throw DimensionMismatch("input CSV dimension mismatch");
  return InputSignal(arc);
}

MemoryArc memory_from_csv(const std::filesystem::path& path) {
  return MemoryArc(read_arc(path));
}

// Benchmark presets used by the oracles and the zeno guard path.
PresetRuntime scalar_decay_preset() {
  PresetRuntime rt;
  rt.name = "scalar-decay";
  SystemDef sys;
  sys.delta = 0.0;
  sys.state_dim = 1;
  sys.input_dim = 1;
  sys.dist_w = [](const State& x) { return x.norm(); };
  sys.flow_pred = [](const MemoryArc&, const State&) { return true; };
  sys.jump_pred = [](const MemoryArc&, const State&) { return false; };
  sys.flow_map = [](const MemoryArc& phi, const State& u) {
    State f(1);
    f[0] = -phi.head()[0] + u[0];
    return std::vector<State>{f};
  };
  sys.jump_map = [](const MemoryArc&, const State&) { return std::vector<State>{}; };
  rt.sys = std::move(sys);
  rt.sim.h = 1e-3;
  rt.sim.horizon_t = 1.0;
  rt.sim.horizon_j = 0;
  State x0(1);
  x0[0] = 1.0;
  rt.initial = constant_memory_arc(x0, 0.0);
  rt.input = InputSignal::zero(1, 2.0);

  CertificateSpec cert;
  cert.variant = Variant::ThmE;
  cert.V_state.V = [](const State& x) { return x[0] * x[0]; };
  cert.alpha1 = ComparisonFunction::power(2.0, 1.0);
  cert.alpha2 = ComparisonFunction::power(2.0, 1.0);
  cert.gamma1 = ComparisonFunction::linear(0.5, FnClass::nondecreasing);
  cert.gamma2 = ComparisonFunction::power(2.0, 1.0, FnClass::nondecreasing);
  cert.lambda1 = 2.0;
  cert.mu = 1.0;
  cert.eps = 1.0;
  cert.N0 = 2;
  rt.cert = cert;
  return rt;
}

PresetRuntime delay_benchmark_preset() {
  PresetRuntime rt;
  rt.name = "delay-benchmark";
  SystemDef sys;
  sys.delta = 0.6;
  sys.state_dim = 1;
  sys.input_dim = 1;
  sys.dist_w = [](const State& x) { return x.norm(); };
  sys.flow_pred = [](const MemoryArc&, const State&) { return true; };
  sys.jump_pred = [](const MemoryArc&, const State&) { return false; };
  sys.flow_map = [](const MemoryArc& phi, const State&) {
    State f(1);
    f[0] = -phi.eval_latest(-0.5)[0];
    return std::vector<State>{f};
  };
  sys.jump_map = [](const MemoryArc&, const State&) { return std::vector<State>{}; };
  rt.sys = std::move(sys);
  rt.sim.h = 1e-3;
  rt.sim.horizon_t = 2.0;
  rt.sim.horizon_j = 0;
  State x0(1);
  x0[0] = 1.0;
  rt.initial = constant_memory_arc(x0, 0.6);
  rt.input = InputSignal::zero(1, 3.0);
  return rt;
}

PresetRuntime zeno_preset() {
  PresetRuntime rt;
  rt.name = "zeno";
  SystemDef sys;
  sys.delta = 0.0;
  sys.state_dim = 1;
  sys.input_dim = 1;
  sys.dist_w = [](const State& x) { return x.norm(); };
  sys.flow_pred = [](const MemoryArc&, const State&) { return false; };
  sys.jump_pred = [](const MemoryArc&, const State&) { return true; };
  sys.flow_map = [](const MemoryArc&, const State&) { return std::vector<State>{}; };
  sys.jump_map = [](const MemoryArc& phi, const State&) {
    State g(1);
    g[0] = 0.5 * phi.head()[0];
    return std::vector<State>{g};
  };
  rt.sys = std::move(sys);
  rt.sim.horizon_t = 1.0;
  rt.sim.horizon_j = 1000000;
  rt.sim.zeno_guard = 8;
  State x0(1);
  x0[0] = 8.0;
  rt.initial = constant_memory_arc(x0, 0.0);
  rt.input = InputSignal::zero(1, 2.0);
  return rt;
}

}  // namespace

PresetRuntime instantiate(const ScenarioConfig& cfg) {
  PresetRuntime rt;
  if (cfg.system == "example1") {
    Example1Build ex = build_example1(Example1Params{});
    rt.name = cfg.system;
    rt.sys = ex.sys;
    rt.sim = ex.sim;
    rt.cert = ex.cert;
    rt.initial = example1_initial_arc(ex, cfg.initial_seed);
    rt.input = InputSignal::zero(1, ex.sim.horizon_t + 1.0);
  } else if (cfg.system.rfind("example2-case", 0) == 0) {
    const int case_id = std::stoi(cfg.system.substr(std::string("example2-case").size()));
    Example2Build ex = build_example2_case(case_id);
    rt.name = cfg.system;
    rt.sys = ex.sys;
    rt.sim = ex.sim;
    rt.cert = ex.cert;
    rt.lkf = ex.lkf;
    if (case_id == 1) {
      rt.iss_beta = ex.iss_beta;
      rt.iss_gamma = ex.iss_gamma;
    }
    State x0(ex.params.n() + 2);
    x0.setZero();
    x0[0] = 1.0;
    State plant = x0.head(ex.params.n());
    rt.initial = example2_initial_arc(ex.params, plant, 0);
    rt.input = InputSignal::zero(ex.params.m(), ex.sim.horizon_t + 1.0);
  } else if (cfg.system == "scalar-decay") {
    rt = scalar_decay_preset();
  } else if (cfg.system == "delay-benchmark") {
    rt = delay_benchmark_preset();
  } else if (cfg.system == "zeno") {
    rt = zeno_preset();
  } else {
    throw SchemaError("unknown system preset '" + cfg.system + "'");
  }

  if (cfg.h) rt.sim.h = *cfg.h;
  if (cfg.horizon_t) rt.sim.horizon_t = *cfg.horizon_t;
  if (cfg.horizon_j) rt.sim.horizon_j = *cfg.horizon_j;
  if (cfg.priority) rt.sim.priority = *cfg.priority;
  if (cfg.selection) rt.sim.selection = *cfg.selection;
  if (cfg.seed) rt.sim.seed = *cfg.seed;
  if (cfg.zeno_guard) rt.sim.zeno_guard = *cfg.zeno_guard;
  if (cfg.event_tol) rt.sim.event_tol = *cfg.event_tol;

  if (cfg.initial_type == "constant") {
    if (static_cast<int>(cfg.initial_value.size()) != rt.sys.state_dim)
      throw SchemaError("initial_memory.value must have the state dimension");
    State v(rt.sys.state_dim);
    for (int i = 0; i < rt.sys.state_dim; ++i) v[i] = cfg.initial_value[static_cast<std::size_t>(i)];
    rt.initial = constant_memory_arc(v, rt.sys.delta);
  } else if (cfg.initial_type == "csv") {
    rt.initial = memory_from_csv(cfg.initial_csv);
  } else if (cfg.initial_type != "preset") {
    throw SchemaError("initial_memory.type must be preset, constant or csv");
  }

  const double input_span = rt.sim.horizon_t + 1.0;
  if (cfg.input_type == "zero") {
    rt.input = InputSignal::zero(rt.sys.input_dim, input_span);
  } else if (cfg.input_type == "constant") {
    if (static_cast<int>(cfg.input_value.size()) != rt.sys.input_dim)
      throw SchemaError("input.value must have the input dimension");
    State v(rt.sys.input_dim);
    for (int i = 0; i < rt.sys.input_dim; ++i) v[i] = cfg.input_value[static_cast<std::size_t>(i)];
    rt.input = InputSignal::constant(v, input_span);
  } else if (cfg.input_type == "csv") {
    rt.input = input_from_csv(cfg.input_csv, rt.sys.input_dim);
  } else if (cfg.input_type != "preset") {
    throw SchemaError("input.type must be preset, zero, constant or csv");
  }

  if (cfg.certificate) {
    if (!rt.cert) throw SchemaError("preset '" + rt.name + "' has no certificate to override");
    apply_cert_overrides(*rt.cert, *cfg.certificate);
  }
  return rt;
}

std::vector<CheckReport> run_suite(const PresetRuntime& rt, const Solution& sol) {
  if (!rt.cert) throw SchemaError("preset '" + rt.name + "' has no certificate wired");
  CheckContext ctx{sol, rt.sys.dist_w, rt.sys.delta};
  std::vector<CheckReport> reps = run_certificate(*rt.cert, ctx);
  if (is_razumikhin(rt.cert->variant))
    reps.push_back(check_vbar_monotone(rt.cert->V_state, ctx, rt.sys.delta, 1e-9));
  switch (rt.cert->variant) {
    case Variant::ThmE:
      reps.push_back(check_bound_eq16(ctx, rt.cert->V_state, rt.cert->mu, rt.cert->lambda1,
                                      rt.cert->alpha2, rt.sys.delta, rt.cert->atol));
      break;
    case Variant::ThmH:
      reps.push_back(check_bound_eq21(ctx, rt.cert->V_func, rt.cert->mu,
                                      rt.cert->lambda_envelope.value_or(0.0), rt.cert->alpha2,
                                      rt.sys.delta, rt.cert->atol));
      break;
    case Variant::ThmI:
      reps.push_back(check_bound_eq31(ctx, rt.cert->V_func, rt.cert->mu,
                                      rt.cert->lambda_envelope.value_or(0.0), rt.cert->alpha2,
                                      rt.sys.delta, rt.cert->atol));
      break;
    default: break;
  }
  if (rt.iss_beta)
    reps.push_back(check_iss_envelope(ctx, *rt.iss_beta,
                                      rt.iss_gamma ? *rt.iss_gamma : ComparisonFunction::zero(),
                                      rt.cert->atol));
  return reps;
}

namespace {

int run_simulation(const ScenarioConfig& cfg, PresetRuntime& rt, Solution& sol) {
  rt = instantiate(cfg);
  sol = simulate(rt.sys, rt.initial, rt.input, rt.sim);
  std::filesystem::create_directories(cfg.output_dir);
  write_arc(cfg.output_dir / "trajectory.csv", cfg.output_dir / "domain.json", sol.x, rt.sys.delta);
  {
    std::ofstream ev(cfg.output_dir / "events.json");
    ev << events_json(sol).dump(2) << "\n";
  }
  {
    std::ofstream ucsv(cfg.output_dir / "input.csv");
    ucsv << arc_to_csv(sol.u);
  }
  return sol.termination == Termination::zeno ? 3 : 0;
}

}  // namespace

int cmd_simulate(const std::filesystem::path& cfg_path) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario(cfg_path);
    PresetRuntime rt;
    Solution sol;
    const int rc = run_simulation(cfg, rt, sol);
    std::cout << "simulated " << rt.name << ": termination=" << to_string(sol.termination)
              << " samples=" << sol.x.total_samples() << " events=" << sol.events.size() << "\n";
    return rc;
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const std::filesystem::path& cfg_path) {
  try {
    ScenarioConfig cfg = load_scenario(cfg_path);
    PresetRuntime rt;
    Solution sol;
    const int sim_rc = run_simulation(cfg, rt, sol);
    (void)sim_rc;
    std::vector<CheckReport> reps = run_suite(rt, sol);
    json rep = reports_json(reps);
    rep["system"] = rt.name;
    rep["termination"] = to_string(sol.termination);
    {
      std::ofstream out(cfg.output_dir / "report.json");
      out << rep.dump(2) << "\n";
    }
    bool any_violation = false;
    bool any_gated = false, any_hit = false;
    for (const CheckReport& r : reps) {
      any_violation = any_violation || !r.passed();
      if (r.trigger_hits >= 0) {
        any_gated = true;
        any_hit = any_hit || r.trigger_hits > 0;
      }
      std::cout << (r.passed() ? "PASS" : "FAIL") << " " << r.variant
                << " samples=" << r.samples_checked;
      if (r.trigger_hits >= 0) std::cout << " hits=" << r.trigger_hits;
      if (r.vacuous) std::cout << " (vacuous)";
      std::cout << "\n";
    }
    if (any_violation) return 1;
    if (any_gated && !any_hit) return 4;
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_report(const std::filesystem::path& report_path, bool plot) {
  std::ifstream in(report_path);
  if (!in) {
    std::cerr << "error: cannot open report " << report_path << "\n";
    return 2;
  }
  json rep;
  try {
    rep = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "error: malformed report JSON: " << e.what() << "\n";
    return 2;
  }
  for (const auto& chk : rep.value("checks", json::array())) {
    const bool passed = chk.value("passed", false);
    std::cout << (passed ? "PASS" : "FAIL") << " variant=" << chk.value("variant", "?")
              << " samples=" << chk.value("samples_checked", 0);
    if (chk.value("trigger_hits", -1) >= 0) std::cout << " hits=" << chk["trigger_hits"].get<long>();
    if (chk.value("vacuous", false)) std::cout << " (vacuous)";
    std::cout << "\n";
    auto viols = chk.value("violations", json::array());
    std::sort(viols.begin(), viols.end(), [](const json& a, const json& b) {
      return a.value("margin", 0.0) > b.value("margin", 0.0);
    });
    for (const auto& v : viols)
      std::cout << "  violation " << v.value("cond", "?") << " at (t=" << v.value("t", 0.0)
                << ", j=" << v.value("j", 0L) << "): lhs=" << v.value("lhs", 0.0)
                << " rhs=" << v.value("rhs", 0.0) << " margin=" << v.value("margin", 0.0) << "\n";
  }

  if (plot) {
    const auto dir = report_path.parent_path();
    try {
      ScenarioConfig cfg = parse_scenario(default_scenario(rep.value("system", "example1")));
      PresetRuntime rt = instantiate(cfg);
      HybridArc raw = read_arc(dir / "trajectory.csv");
      HybridArc arc = rehydrate_derivatives(rt.sys, raw, rt.input);

      // Per-sample value and the variant's envelope, recomputed from the
      // stored solution.
      std::vector<double> tj, val, env;
      const double phi0 = memory_sup_distance(memory_operator(arc, 0.0, 0, rt.sys.delta),
                                              rt.sys.dist_w);
      const Variant variant = rt.cert ? rt.cert->variant : Variant::ThmE;
      for (const Segment& s : arc.domain().segments()) {
        if (s.j < 0) continue;
        const SegmentSamples& g = arc.samples(s.j);
        for (std::size_t i = 0; i < g.t.size(); ++i) {
          if (g.t[i] < 0.0) continue;
          const double t = g.t[i];
          const double jd = static_cast<double>(s.j);
          double v = 0.0, e = 0.0;
          if (rt.cert && is_razumikhin(variant)) {
            v = rt.cert->V_state(g.x[i]);
            e = variant == Variant::ThmE
                    ? std::pow(rt.cert->mu, jd) * std::exp(-rt.cert->lambda1 * t) *
                          rt.cert->alpha2(phi0)
                    : vbar(rt.cert->V_state, memory_operator(arc, t, s.j, rt.sys.delta),
                           rt.sys.delta);
          } else if (rt.cert) {
            const double vf = rt.cert->V_func(memory_operator(arc, t, s.j, rt.sys.delta));
            const double lam = rt.cert->lambda_envelope.value_or(0.0);
            if (variant == Variant::ThmH) {
              v = std::exp(lam * t) * vf;
              e = std::pow(rt.cert->mu, jd) * rt.cert->alpha2(phi0);
            } else if (variant == Variant::ThmI) {
              v = vf;
              e = std::pow(rt.cert->mu, jd) * std::exp(lam * t) * rt.cert->alpha2(phi0);
            } else {
              v = vf;
              e = rt.cert->alpha2(phi0);
            }
          } else {
            v = rt.sys.dist_w(g.x[i]);
            e = phi0;
          }
          tj.push_back(t + jd);
          val.push_back(v);
          env.push_back(e);
        }
      }
      std::ofstream pc(dir / "plot_data.csv");
      pc << plot_csv(tj, val, env);
      std::cout << "wrote " << (dir / "plot_data.csv").string() << "\n";
      std::cout << "# plot with e.g.:\n"
                << "#   python3 -c \"import pandas as pd, matplotlib.pyplot as plt; "
                   "d = pd.read_csv('plot_data.csv'); d.plot(x='tj'); plt.show()\"\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}

json default_scenario(const std::string& system, std::optional<int> example2_case) {
  std::string id = system;
  if (system == "example2" && example2_case) id = "example2-case" + std::to_string(*example2_case);
  return json{{"system", id}, {"output_dir", "out-" + id}};
}

}  // namespace hymem
