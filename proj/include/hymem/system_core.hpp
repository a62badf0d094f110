#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hymem/hybrid_time.hpp"

namespace hymem {

/// System data (F, G, C, D, dist_W) with finite-selection set-valued maps.
/// F and G return non-empty candidate lists whenever their predicate holds.
struct SystemDef {
  double delta = 0.0;  // memory size (seconds + jumps), finite
  int state_dim = 0;
  int input_dim = 0;
  std::function<std::vector<State>(const MemoryArc&, const State&)> flow_map;
  std::function<std::vector<State>(const MemoryArc&, const State&)> jump_map;
  std::function<bool(const MemoryArc&, const State&)> flow_pred;
  std::function<bool(const MemoryArc&, const State&)> jump_pred;
  std::function<double(const State&)> dist_w;
};

enum class Priority { jump_first, flow_first };
enum class SelectionPolicy { first, seeded_random };

struct SimConfig {
  double h = 1e-3;
  double horizon_t = 1.0;
  long horizon_j = 1000000;
  Priority priority = Priority::jump_first;
  SelectionPolicy selection = SelectionPolicy::first;
  std::uint64_t seed = 0;
  int zeno_guard = 8;       // max jumps allowed at a single t value
  double event_tol = 1e-9;  // flow-exit bisection tolerance (seconds)
};

enum class EventKind { jump, flow_exit, dead_end, horizon, zeno };
enum class Termination { horizon, dead_end, zeno };

struct Event {
  double t = 0.0;
  long j = 0;  // pre-jump index for jump events
  EventKind kind = EventKind::jump;
};

std::string to_string(EventKind k);
std::string to_string(Termination k);

/// A computed solution pair: the memory part of x is the initial arc, the
/// forward part is integrator output; u is resampled onto dom_{>=0} x.
struct Solution {
  HybridArc x;
  HybridArc u;
  std::vector<Event> events;
  Termination termination = Termination::horizon;
};

/// Growing hybrid arc used by the simulator: cheap appends, provisional tail
/// samples for stage evaluation, window extraction at any current point.
class ArcBuilder {
 public:
  explicit ArcBuilder(const MemoryArc& phi0);

  void append_sample(double t, const State& x, const State& f);
  void set_last_deriv(const State& f);
  void replace_last(double t, const State& x, const State& f);
  void pop_sample();
  void begin_jump_segment(double t, const State& x);

  double head_time() const { return samp_.back().t.back(); }
  long head_j() const { return segs_.back().j; }
  const State& head_state() const { return samp_.back().x.back(); }
  State eval_head_segment(double t) const;

  MemoryArc window(double t, long j, double delta) const;
  HybridArc finish() const;

 private:
  std::vector<Segment> segs_;
  std::vector<SegmentSamples> samp_;
  Interp interp_ = Interp::cubic_hermite;
  bool use_derivs_ = true;
};

/// Simulates the hybrid system with Definition-3 semantics: flow while the
/// flow predicate holds (RK4 with interpolated delayed lookups), jump when the
/// jump predicate holds, C/D overlap resolved by cfg.priority. Terminates at
/// the horizon, at a dead end, or when the zeno guard fires.
Solution simulate(const SystemDef& sys, const MemoryArc& phi0, const InputSignal& u,
                  const SimConfig& cfg);

/// Bisection for the boundary of a predicate that is true at t_in and false at
/// t_out; the returned time is on the true side, within tol of the boundary.
double detect_flow_exit(const std::function<bool(double)>& pred, double t_in, double t_out,
                        double tol);

struct StepResult {
  State x_end;
  State f_start;
  State f_end;
};

/// One explicit RK4 step of length h from (t, j): every stage evaluates F on
/// the memory window of the history extended with already-computed stage data,
/// delayed lookups interpolate. Returns end state and end derivative.
StepResult step_flow(const SystemDef& sys, ArcBuilder& history, double t, long j, double h,
                     const State& u_now, const State& u_mid, const State& u_end,
                     std::uint64_t selection_index);

}  // namespace hymem
