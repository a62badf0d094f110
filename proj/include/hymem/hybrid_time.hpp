#pragma once
#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "hymem/errors.hpp"

namespace hymem {

using State = Eigen::VectorXd;

/// A point (t, j) of a hybrid time domain. Ordering is by t + j.
struct HybridTime {
  double t = 0.0;
  long j = 0;
  double sum() const { return t + static_cast<double>(j); }
};

inline bool operator<=(const HybridTime& a, const HybridTime& b) { return a.sum() <= b.sum(); }
inline bool operator<(const HybridTime& a, const HybridTime& b) { return a.sum() < b.sum(); }

/// One flow interval [t_lo, t_hi] at jump index j. Point intervals are allowed.
struct Segment {
  double t_lo = 0.0;
  double t_hi = 0.0;
  long j = 0;
};

/// Hybrid time domain with memory: one interval per jump index, consecutive
/// indices j_min..j_max with j_min <= 0 <= j_max, contiguous endpoints, and
/// anchored so the j = 0 interval contains t = 0. The memory part is the
/// t <= 0 / j <= 0 portion, the forward part the t >= 0 / j >= 0 portion.
class HybridTimeDomain {
 public:
  HybridTimeDomain() = default;

  long j_min() const { return segments_.empty() ? 0 : segments_.front().j; }
  long j_max() const { return segments_.empty() ? 0 : segments_.back().j; }
  bool empty() const { return segments_.empty(); }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(long j) const;
  bool has_segment(long j) const { return !segments_.empty() && j >= j_min() && j <= j_max(); }
  bool contains(double t, long j) const;

  /// Memory depth: min over the memory part of s + k (0 for forward-only domains).
  double depth() const;

  /// Largest t + j over the whole domain.
  double end_sum() const;

  bool has_memory_part() const { return !segments_.empty() && segments_.front().t_lo < 0.0; }

  /// Restriction to points with t <= T, j <= J (T, J in the forward part).
  HybridTimeDomain truncate_forward(double T, long J) const;

  friend HybridTimeDomain validate_domain(std::vector<Segment> raw);
  friend class ArcBuilder;

 private:
  std::vector<Segment> segments_;  // invariant-checked, one per jump index
};

/// Builds a HybridTimeDomain from raw (t_lo, t_hi, j) triples. Pieces sharing
/// a jump index are merged when contiguous (the j = 0 interval may be supplied
/// as separate memory and forward halves split at t = 0).
HybridTimeDomain validate_domain(std::vector<Segment> raw);

/// Memory depth of a domain; see HybridTimeDomain::depth.
double depth(const HybridTimeDomain& d);

enum class Interp { linear, cubic_hermite };

/// Sample grid of one segment: strictly increasing times covering the segment,
/// states, and optionally one stored derivative per sample for dense output.
struct SegmentSamples {
  std::vector<double> t;
  std::vector<State> x;
  std::vector<State> f;  // empty, or same length as x

  bool has_derivatives() const { return !f.empty(); }
};

/// A sampled hybrid arc (with memory) over a validated domain. Immutable after
/// construction; evaluation interpolates within segments and is exact at samples.
class HybridArc {
 public:
  HybridArc() = default;
  HybridArc(HybridTimeDomain dom, std::vector<SegmentSamples> samples, Interp interp);

  const HybridTimeDomain& domain() const { return dom_; }
  Interp interpolation() const { return interp_; }
  int dim() const { return dim_; }
  const SegmentSamples& samples(long j) const;

  State eval(double t, long j) const;
  std::optional<State> deriv_at_sample(double t, long j) const;

  /// k(s): the largest jump index whose segment contains time s.
  long max_jump_at(double s) const;
  State eval_latest(double s) const { return eval(s, max_jump_at(s)); }

  std::size_t total_samples() const;

 private:
  friend class ArcBuilder;
  HybridTimeDomain dom_;
  std::vector<SegmentSamples> samp_;
  Interp interp_ = Interp::cubic_hermite;
  int dim_ = 0;

  const SegmentSamples& samp_of(long j) const { return samp_[static_cast<std::size_t>(j - dom_.j_min())]; }
};

/// A hybrid memory arc: an arc whose domain lies in R_{<=0} x Z_{<=0},
/// anchored at (0, 0).
class MemoryArc {
 public:
  MemoryArc() = default;
  explicit MemoryArc(HybridArc arc);

  const HybridArc& arc() const { return arc_; }
  const HybridTimeDomain& domain() const { return arc_.domain(); }
  int dim() const { return arc_.dim(); }
  double depth() const { return arc_.domain().depth(); }

  State eval(double s, long k) const { return arc_.eval(s, k); }
  long max_jump_at(double s) const { return arc_.max_jump_at(s); }
  State eval_latest(double s) const { return arc_.eval_latest(s); }
  State head() const { return arc_.eval(0.0, 0); }

  /// M^Delta membership: -Delta-1 <= depth <= -Delta.
  bool in_M_delta(double delta) const {
    const double d = depth();
    return d >= -delta - 1.0 && d <= -delta;
  }

 private:
  HybridArc arc_;
};

/// A hybrid input signal: forward-domain samples plus the single backward
/// point (0, 0). Between samples the previous value is held.
class InputSignal {
 public:
  InputSignal() = default;
  explicit InputSignal(HybridArc arc);

  static InputSignal zero(int dim, double t_end);
  static InputSignal constant(const State& value, double t_end);
  /// Piecewise signal from a time grid (single flow segment, hold between samples).
  static InputSignal sampled(std::vector<double> t, std::vector<State> values);

  const HybridArc& arc() const { return arc_; }
  int dim() const { return arc_.dim(); }

  /// Previous-sample hold lookup by time only (inputs are merely measurable).
  State value_at_time(double t) const;

 private:
  HybridArc arc_;
};

/// A^Delta_{[t,j]} x: the depth-Delta backward window of x re-centered at
/// (t, j). Delta_inf is the smallest achievable depth >= Delta present in
/// dom x, clamped to the available history when it is shallower than Delta.
MemoryArc memory_operator(const HybridArc& x, double t, long j, double delta);

/// Hybrid sup norm of an input over the window [from, to] (ordering by t + j):
/// max of the values at jump points of Gamma(u) and the sample sup elsewhere.
double sup_norm_input(const InputSignal& u, const HybridTime& from, const HybridTime& to);

/// ||phi||_W: sup of dist_w over all samples of phi with s + k in [-Delta-1, 0].
/// A memory arc in M^Delta lies entirely inside that window.
double memory_sup_distance(const MemoryArc& phi, const std::function<double(const State&)>& dist_w);

}  // namespace hymem
