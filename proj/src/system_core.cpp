#include "hymem/system_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hymem/detail/windowing.hpp"

namespace hymem {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::jump: return "jump";
    case EventKind::flow_exit: return "flow-exit";
    case EventKind::dead_end: return "dead-end";
    case EventKind::horizon: return "horizon";
    case EventKind::zeno: return "zeno";
  }
  return "?";
}

std::string to_string(Termination k) {
  switch (k) {
    case Termination::horizon: return "horizon";
    case Termination::dead_end: return "dead-end";
    case Termination::zeno: return "zeno";
  }
  return "?";
}

ArcBuilder::ArcBuilder(const MemoryArc& phi0) {
  const HybridArc& a = phi0.arc();
  segs_ = a.domain().segments();
  samp_.reserve(segs_.size());
  use_derivs_ = true;
  for (const Segment& s : segs_) {
    const SegmentSamples& g = a.samples(s.j);
    if (!g.has_derivatives()) use_derivs_ = false;
    samp_.push_back(g);
  }
  interp_ = use_derivs_ ? Interp::cubic_hermite : a.interpolation();
  if (!use_derivs_)
    for (auto& g : samp_) g.f.clear();
}

void ArcBuilder::append_sample(double t, const State& x, const State& f) {
  SegmentSamples& g = samp_.back();
  if (!(t > g.t.back())) throw OrderError("appended sample must advance time");
  g.t.push_back(t);
  g.x.push_back(x);
  if (use_derivs_) g.f.push_back(f);
  segs_.back().t_hi = t;
}

void ArcBuilder::set_last_deriv(const State& f) {
  if (!use_derivs_) return;
  samp_.back().f.back() = f;
}

void ArcBuilder::replace_last(double t, const State& x, const State& f) {
  SegmentSamples& g = samp_.back();
  if (g.t.size() >= 2 && !(t > g.t[g.t.size() - 2]))
    throw OrderError("replacement sample must keep times increasing");
  g.t.back() = t;
  g.x.back() = x;
  if (use_derivs_) g.f.back() = f;
  segs_.back().t_hi = t;
}

void ArcBuilder::pop_sample() {
  SegmentSamples& g = samp_.back();
  g.t.pop_back();
  g.x.pop_back();
  if (use_derivs_) g.f.pop_back();
  segs_.back().t_hi = g.t.back();
}

void ArcBuilder::begin_jump_segment(double t, const State& x) {
  segs_.push_back({t, t, segs_.back().j + 1});
  SegmentSamples g;
  g.t.push_back(t);
  g.x.push_back(x);
  if (use_derivs_) g.f.push_back(State::Zero(x.size()));
  samp_.push_back(std::move(g));
}

State ArcBuilder::eval_head_segment(double t) const {
  return detail::eval_segment(samp_.back(), interp_, t);
}

MemoryArc ArcBuilder::window(double t, long j, double delta) const {
  return detail::window_impl(
      segs_, [this](long jj) -> const SegmentSamples& {
        return samp_[static_cast<std::size_t>(jj - segs_.front().j)];
      },
      interp_, t, j, delta);
}

HybridArc ArcBuilder::finish() const {
  return HybridArc(validate_domain(segs_), samp_, interp_);
}

double detect_flow_exit(const std::function<bool(double)>& pred, double t_in, double t_out,
                        double tol) {
  if (!(tol > 0.0)) throw ParamError("detect_flow_exit needs tol > 0");
  if (!pred(t_in)) throw NoBracket("predicate already false at t_in");
  if (pred(t_out)) throw NoBracket("predicate still true at t_out");
  double lo = t_in, hi = t_out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

namespace {

// Boundary of a predicate that turns true inside (t_in, t_out]; returns a
// time on the true side, within tol of the boundary.
double detect_entry(const std::function<bool(double)>& pred, double t_in, double t_out, double tol) {
  if (pred(t_in)) return t_in;
  if (!pred(t_out)) throw NoBracket("predicate still false at t_out");
  double lo = t_in, hi = t_out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::size_t select_index(SelectionPolicy policy, std::mt19937_64& rng, std::size_t n) {
  if (n <= 1 || policy == SelectionPolicy::first) return 0;
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  return d(rng);
}

}  // namespace

StepResult step_flow(const SystemDef& sys, ArcBuilder& history, double t, long j, double h,
                     const State& u_now, const State& u_mid, const State& u_end,
                     std::uint64_t selection_index) {
  const State x0 = history.head_state();
  auto eval_f = [&](double ts, const State& u) -> State {
    auto list = sys.flow_map(history.window(ts, j, sys.delta), u);
    if (list.empty()) throw EmptyFlowSet("flow map returned no selections");
    const State& f = list[selection_index % list.size()];
    if (f.size() != x0.size()) throw DimensionMismatch("flow selection has wrong dimension");
    return f;
  };

  const State k1 = eval_f(t, u_now);
  history.set_last_deriv(k1);

  history.append_sample(t + 0.5 * h, x0 + (0.5 * h) * k1, k1);
  const State k2 = eval_f(t + 0.5 * h, u_mid);
  history.pop_sample();

  history.append_sample(t + 0.5 * h, x0 + (0.5 * h) * k2, k2);
  const State k3 = eval_f(t + 0.5 * h, u_mid);
  history.pop_sample();

  history.append_sample(t + h, x0 + h * k3, k3);
  const State k4 = eval_f(t + h, u_end);
  history.pop_sample();

  StepResult r;
  r.x_end = x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  r.f_start = k1;
  history.append_sample(t + h, r.x_end, k4);
  r.f_end = eval_f(t + h, u_end);
  history.set_last_deriv(r.f_end);
  history.pop_sample();
  return r;
}

Solution simulate(const SystemDef& sys, const MemoryArc& phi0, const InputSignal& u,
                  const SimConfig& cfg) {
  if (!(cfg.h > 0.0) || !(cfg.event_tol > 0.0) || cfg.zeno_guard < 1)
    throw ParamError("SimConfig needs h > 0, event_tol > 0, zeno_guard >= 1");
  if (!std::isfinite(sys.delta) || sys.delta < 0.0)
    throw ParamError("system memory size must be finite and non-negative");
  if (phi0.dim() != sys.state_dim)
    throw DimensionMismatch("initial memory arc dimension != state_dim");
  if (!phi0.in_M_delta(sys.delta))
    throw BadInitial("initial memory arc not in M^Delta (depth " + std::to_string(phi0.depth()) +
                     " outside [" + std::to_string(-sys.delta - 1.0) + ", " +
                     std::to_string(-sys.delta) + "])");
  if (u.dim() != sys.input_dim) throw DimensionMismatch("input dimension != input_dim");

  ArcBuilder hist(phi0);
  std::mt19937_64 rng(cfg.seed);

  double t = 0.0;
  long j = 0;
  std::vector<Event> events;
  Termination termination = Termination::horizon;

  {
    const State u0 = u.value_at_time(0.0);
    const MemoryArc w0 = hist.window(0.0, 0, sys.delta);
    if (!sys.flow_pred(w0, u0) && !sys.jump_pred(w0, u0))
      throw BadInitial("(A^Delta_{[0,0]}x, u(0,0)) is in neither C nor D");
  }

  double last_jump_t = std::numeric_limits<double>::quiet_NaN();
  int same_t_jumps = 0;
  const double t_snap = cfg.h * 1e-9;

  while (true) {
    if (t >= cfg.horizon_t - t_snap) {
      events.push_back({t, j, EventKind::horizon});
      termination = Termination::horizon;
      break;
    }
    const State uv = u.value_at_time(t);
    const MemoryArc w = hist.window(t, j, sys.delta);
    const bool in_c = sys.flow_pred(w, uv);
    const bool in_d = sys.jump_pred(w, uv);
    if (!in_c && !in_d) {
      events.push_back({t, j, EventKind::dead_end});
      termination = Termination::dead_end;
      break;
    }

    const bool do_jump = in_d && (cfg.priority == Priority::jump_first || !in_c);
    if (do_jump) {
      if (j >= cfg.horizon_j) {
        events.push_back({t, j, EventKind::horizon});
        termination = Termination::horizon;
        break;
      }
      if (t == last_jump_t && same_t_jumps >= cfg.zeno_guard) {
        events.push_back({t, j, EventKind::zeno});
        termination = Termination::zeno;
        break;
      }
      auto g_list = sys.jump_map(w, uv);
      if (g_list.empty()) throw EmptyJumpSet("jump map returned no selections");
      const State& xp = g_list[select_index(cfg.selection, rng, g_list.size())];
      if (xp.size() != sys.state_dim) throw DimensionMismatch("jump selection has wrong dimension");
      events.push_back({t, j, EventKind::jump});
      hist.begin_jump_segment(t, xp);
      same_t_jumps = (t == last_jump_t) ? same_t_jumps + 1 : 1;
      last_jump_t = t;
      ++j;
      continue;
    }

    // Flow one step, clipped to the horizon.
    double hstep = std::min(cfg.h, cfg.horizon_t - t);
    const double t_end = (cfg.horizon_t - t <= cfg.h * (1.0 + 1e-9)) ? cfg.horizon_t : t + hstep;
    hstep = t_end - t;

    const std::uint64_t sel =
        (cfg.selection == SelectionPolicy::seeded_random) ? rng() : std::uint64_t{0};
    const State u_mid = u.value_at_time(t + 0.5 * hstep);
    const State u_end = u.value_at_time(t_end);
    StepResult r = step_flow(sys, hist, t, j, hstep, uv, u_mid, u_end, sel);
    hist.append_sample(t_end, r.x_end, r.f_end);

    auto pred_c = [&](double ts) {
      return sys.flow_pred(hist.window(ts, j, sys.delta), u.value_at_time(ts));
    };
    auto pred_d = [&](double ts) {
      return sys.jump_pred(hist.window(ts, j, sys.delta), u.value_at_time(ts));
    };

    double t_event = std::numeric_limits<double>::infinity();
    if (cfg.priority == Priority::jump_first && pred_d(t_end))
      t_event = detect_entry(pred_d, t, t_end, cfg.event_tol);
    bool c_exit = false;
    if (!pred_c(t_end)) {
      const double tc = detect_flow_exit(pred_c, t, t_end, cfg.event_tol);
      if (tc < t_event) {
        t_event = tc;
        c_exit = true;
      }
    }

    if (!std::isfinite(t_event)) {
      t = t_end;
      continue;
    }

    if (t_event <= t + std::max(0.5 * cfg.event_tol, 1e-15)) {
      // Boundary sits at the current point; the trial step contributed nothing.
      hist.pop_sample();
    } else {
      const State x_ev = hist.eval_head_segment(t_event);
      hist.replace_last(t_event, x_ev, r.f_end);
      auto list = sys.flow_map(hist.window(t_event, j, sys.delta), u.value_at_time(t_event));
      if (!list.empty()) hist.set_last_deriv(list[sel % list.size()]);
      t = t_event;
    }

    if (c_exit) {
      events.push_back({t, j, EventKind::flow_exit});
      // Within tol of the flow-set boundary: jump if permitted, else dead end.
      if (!pred_d(t)) {
        events.push_back({t, j, EventKind::dead_end});
        termination = Termination::dead_end;
        break;
      }
    }
  }

  Solution sol;
  sol.x = hist.finish();
  sol.events = std::move(events);
  sol.termination = termination;

  // Resample the input onto dom_{>=0} x (Definition 3 (i)).
  {
    std::vector<Segment> usegs;
    std::vector<SegmentSamples> usamp;
    for (const Segment& s : sol.x.domain().segments()) {
      if (s.j < 0) continue;
      Segment fs = s;
      if (s.j == 0) fs.t_lo = 0.0;
      SegmentSamples ug;
      const SegmentSamples& xg = sol.x.samples(s.j);
      for (double ts : xg.t) {
        if (ts < fs.t_lo) continue;
        ug.t.push_back(ts);
        ug.x.push_back(u.value_at_time(ts));
      }
      if (ug.t.empty() || ug.t.front() != fs.t_lo) {
        ug.t.insert(ug.t.begin(), fs.t_lo);
        ug.x.insert(ug.x.begin(), u.value_at_time(fs.t_lo));
      }
      usegs.push_back(fs);
      usamp.push_back(std::move(ug));
    }
    sol.u = HybridArc(validate_domain(std::move(usegs)), std::move(usamp), Interp::linear);
  }
  return sol;
}

}  // namespace hymem
