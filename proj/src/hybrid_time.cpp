#include "hymem/hybrid_time.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hymem/detail/windowing.hpp"
#include "hymem/parallel.hpp"

namespace hymem {

namespace {
constexpr double kTimeEps = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kTimeEps * (1.0 + std::abs(a) + std::abs(b)); }
}  // namespace

const Segment& HybridTimeDomain::segment(long j) const {
  if (!has_segment(j)) throw OutOfDomain("no segment at jump index " + std::to_string(j));
  return segments_[static_cast<std::size_t>(j - j_min())];
}

bool HybridTimeDomain::contains(double t, long j) const {
  if (!has_segment(j)) return false;
  const Segment& s = segments_[static_cast<std::size_t>(j - j_min())];
  return t >= s.t_lo - kTimeEps && t <= s.t_hi + kTimeEps;
}

double HybridTimeDomain::depth() const {
  if (segments_.empty()) return 0.0;
  const Segment& first = segments_.front();
  if (first.j > 0 || (first.j == 0 && first.t_lo >= 0.0)) return 0.0;
  return first.t_lo + static_cast<double>(first.j);
}

double HybridTimeDomain::end_sum() const {
  if (segments_.empty()) return 0.0;
  const Segment& last = segments_.back();
  return last.t_hi + static_cast<double>(last.j);
}

HybridTimeDomain HybridTimeDomain::truncate_forward(double T, long J) const {
  std::vector<Segment> out;
  for (const Segment& s : segments_) {
    if (s.j > J || s.t_lo > T + kTimeEps) break;
    Segment c = s;
    c.t_hi = std::min(c.t_hi, T);
    out.push_back(c);
  }
  return validate_domain(std::move(out));
}

HybridTimeDomain validate_domain(std::vector<Segment> raw) {
  if (raw.empty()) throw AnchorError("empty segment list");

  // Merge contiguous pieces sharing a jump index (the j = 0 interval may be
  // given as memory and forward halves).
  std::vector<Segment> merged;
  for (const Segment& s : raw) {
    if (s.t_lo > s.t_hi + kTimeEps)
      throw OrderError("segment with t_lo > t_hi at j = " + std::to_string(s.j));
    if (!merged.empty() && merged.back().j == s.j) {
      if (!close(merged.back().t_hi, s.t_lo))
        throw ContiguityError("pieces at j = " + std::to_string(s.j) + " do not share an endpoint");
      merged.back().t_hi = s.t_hi;
    } else {
      merged.push_back(s);
    }
  }

  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i + 1].j != merged[i].j + 1)
      throw ContiguityError("jump indices must increase by one (got " + std::to_string(merged[i].j) +
                            " then " + std::to_string(merged[i + 1].j) + ")");
    if (!close(merged[i].t_hi, merged[i + 1].t_lo))
      throw ContiguityError("segment " + std::to_string(merged[i].j) + " ends at " +
                            std::to_string(merged[i].t_hi) + " but segment " +
                            std::to_string(merged[i + 1].j) + " starts at " +
                            std::to_string(merged[i + 1].t_lo));
  }

  const long jmin = merged.front().j;
  const long jmax = merged.back().j;
  if (jmin > 0 || jmax < 0) throw AnchorError("domain has no segment at jump index 0");
  const Segment& anchor = merged[static_cast<std::size_t>(-jmin)];
  if (anchor.t_lo > kTimeEps || anchor.t_hi < -kTimeEps)
    throw AnchorError("the j = 0 segment must contain t = 0 (s_0 = 0 = t_0)");
  for (const Segment& s : merged) {
    if (s.j < 0 && s.t_hi > kTimeEps)
      throw AnchorError("memory segment at j = " + std::to_string(s.j) + " has t > 0");
    if (s.j > 0 && s.t_lo < -kTimeEps)
      throw AnchorError("forward segment at j = " + std::to_string(s.j) + " has t < 0");
  }

  HybridTimeDomain d;
  d.segments_ = std::move(merged);
  return d;
}

double depth(const HybridTimeDomain& d) { return d.depth(); }

HybridArc::HybridArc(HybridTimeDomain dom, std::vector<SegmentSamples> samples, Interp interp)
    : dom_(std::move(dom)), samp_(std::move(samples)), interp_(interp) {
  if (samp_.size() != dom_.segments().size())
    throw DimensionMismatch("one sample grid per segment required");
  dim_ = -1;
  for (std::size_t si = 0; si < samp_.size(); ++si) {
    const Segment& seg = dom_.segments()[si];
    const SegmentSamples& g = samp_[si];
    if (g.t.empty() || g.t.size() != g.x.size())
      throw DimensionMismatch("segment " + std::to_string(seg.j) + " has an invalid sample grid");
    if (!g.f.empty() && g.f.size() != g.x.size())
      throw DimensionMismatch("derivative count mismatch at j = " + std::to_string(seg.j));
    if (!close(g.t.front(), seg.t_lo) || !close(g.t.back(), seg.t_hi))
      throw OutOfDomain("segment endpoints must carry samples (j = " + std::to_string(seg.j) + ")");
    for (std::size_t i = 0; i + 1 < g.t.size(); ++i)
      if (!(g.t[i] < g.t[i + 1]))
        throw OrderError("sample times must be strictly increasing (j = " + std::to_string(seg.j) + ")");
    for (const State& x : g.x) {
      if (dim_ < 0) dim_ = static_cast<int>(x.size());
      if (static_cast<int>(x.size()) != dim_)
        throw DimensionMismatch("state dimension changes across samples");
    }
    for (const State& f : g.f)
      if (static_cast<int>(f.size()) != dim_)
        throw DimensionMismatch("derivative dimension changes across samples");
  }
  if (dim_ < 0) dim_ = 0;
}

const SegmentSamples& HybridArc::samples(long j) const {
  if (!dom_.has_segment(j)) throw OutOfDomain("no segment at jump index " + std::to_string(j));
  return samp_of(j);
}

namespace detail {

State eval_segment(const SegmentSamples& g, Interp interp, double t) {
  if (g.t.size() == 1) return g.x.front();
  t = std::clamp(t, g.t.front(), g.t.back());
  auto it = std::upper_bound(g.t.begin(), g.t.end(), t);
  std::size_t hi = std::min(static_cast<std::size_t>(it - g.t.begin()), g.t.size() - 1);
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  if (t == g.t[lo]) return g.x[lo];
  if (t == g.t[hi]) return g.x[hi];
  if (interp == Interp::cubic_hermite && g.has_derivatives()) {
    const double h = g.t[hi] - g.t[lo];
    const double s = (t - g.t[lo]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * g.x[lo] + ((s3 - 2 * s2 + s) * h) * g.f[lo] +
           (-2 * s3 + 3 * s2) * g.x[hi] + ((s3 - s2) * h) * g.f[hi];
  }
  const double w = (t - g.t[lo]) / (g.t[hi] - g.t[lo]);
  return (1.0 - w) * g.x[lo] + w * g.x[hi];
}

MemoryArc window_impl(const std::vector<Segment>& segs,
                      const std::function<const SegmentSamples&(long)>& samples_of, Interp interp,
                      double t, long j, double delta) {
  const double now = t + static_cast<double>(j);

  // Delta_inf: smallest achievable depth >= delta among offsets s + k present
  // in the domain, clamped to the deepest available history.
  double delta_inf = -1.0;
  double deepest = 0.0;
  for (const Segment& s : segs) {
    if (s.j > j) break;
    const double hi_t = (s.j == j) ? std::min(t, s.t_hi) : s.t_hi;
    if (hi_t < s.t_lo - kTimeEps) continue;
    const double a = now - (hi_t + static_cast<double>(s.j));    // shallowest depth in segment
    const double b = now - (s.t_lo + static_cast<double>(s.j));  // deepest depth in segment
    deepest = std::max(deepest, b);
    double cand = -1.0;
    if (a >= delta) cand = a;
    else if (b >= delta) cand = delta;
    if (cand >= 0.0 && (delta_inf < 0.0 || cand < delta_inf)) delta_inf = cand;
  }
  if (delta_inf < 0.0) delta_inf = deepest;  // shallow history: take everything

  std::vector<Segment> out_segs;
  std::vector<SegmentSamples> out_samp;
  for (const Segment& s : segs) {
    if (s.j > j) break;
    const long k = s.j - j;
    const double lo_abs = std::max(s.t_lo, t - delta_inf - static_cast<double>(k));
    const double hi_abs = (s.j == j) ? std::min(t, s.t_hi) : s.t_hi;
    if (lo_abs > hi_abs + kTimeEps) continue;

    const SegmentSamples& g = samples_of(s.j);
    const bool derivs = g.has_derivatives();
    SegmentSamples o;
    auto stored_slope_before = [&](double ta) -> State {
      auto it = std::upper_bound(g.t.begin(), g.t.end(), ta);
      std::size_t hi_i = std::min<std::size_t>(static_cast<std::size_t>(it - g.t.begin()), g.t.size() - 1);
      if (hi_i == 0) hi_i = 1;
      return g.f[hi_i - 1];
    };
    if (lo_abs > g.t.front() + kTimeEps) {
      o.t.push_back(lo_abs - t);
      o.x.push_back(eval_segment(g, interp, lo_abs));
      if (derivs) o.f.push_back(stored_slope_before(lo_abs));
    }
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      if (g.t[i] < lo_abs - kTimeEps || g.t[i] > hi_abs + kTimeEps) continue;
      const double rel = g.t[i] - t;
      if (!o.t.empty() && !(rel > o.t.back())) continue;
      o.t.push_back(rel);
      o.x.push_back(g.x[i]);
      if (derivs) o.f.push_back(g.f[i]);
    }
    if (o.t.empty() || o.t.back() < hi_abs - t - kTimeEps) {
      o.t.push_back(hi_abs - t);
      o.x.push_back(eval_segment(g, interp, hi_abs));
      if (derivs) o.f.push_back(stored_slope_before(hi_abs));
    }
    // Snap the head sample to offset zero exactly.
    if (s.j == j) o.t.back() = 0.0;
    out_segs.push_back({o.t.front(), o.t.back(), k});
    out_samp.push_back(std::move(o));
  }

  return MemoryArc(HybridArc(validate_domain(std::move(out_segs)), std::move(out_samp), interp));
}

}  // namespace detail

State HybridArc::eval(double t, long j) const {
  if (!dom_.contains(t, j)) {
    throw OutOfDomain("(" + std::to_string(t) + ", " + std::to_string(j) + ") not in dom");
  }
  return detail::eval_segment(samp_of(j), interp_, t);
}

std::optional<State> HybridArc::deriv_at_sample(double t, long j) const {
  if (!dom_.has_segment(j)) return std::nullopt;
  const SegmentSamples& g = samp_of(j);
  if (!g.has_derivatives()) return std::nullopt;
  auto it = std::lower_bound(g.t.begin(), g.t.end(), t);
  if (it == g.t.end() || *it != t) return std::nullopt;
  return g.f[static_cast<std::size_t>(it - g.t.begin())];
}

long HybridArc::max_jump_at(double s) const {
  const auto& segs = dom_.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    if (s >= it->t_lo - kTimeEps && s <= it->t_hi + kTimeEps) return it->j;
  }
  throw OutOfDomain("no segment contains t = " + std::to_string(s));
}

std::size_t HybridArc::total_samples() const {
  std::size_t n = 0;
  for (const auto& g : samp_) n += g.t.size();
  return n;
}

MemoryArc::MemoryArc(HybridArc arc) : arc_(std::move(arc)) {
  const auto& dom = arc_.domain();
  if (dom.empty()) throw AnchorError("memory arc needs a domain");
  if (dom.j_max() != 0) throw AnchorError("memory arc must end at jump index 0");
  if (std::abs(dom.segment(0).t_hi) > 1e-12)
    throw AnchorError("memory arc must be anchored at (0, 0)");
}

InputSignal::InputSignal(HybridArc arc) : arc_(std::move(arc)) {
  const auto& dom = arc_.domain();
  if (dom.empty()) throw AnchorError("input signal needs a domain");
  if (dom.j_min() != 0 || dom.segment(0).t_lo < -1e-12)
    throw AnchorError("dom_{<=0}(u) must be the single point (0, 0)");
}

InputSignal InputSignal::zero(int dim, double t_end) { return constant(State::Zero(dim), t_end); }

InputSignal InputSignal::constant(const State& value, double t_end) {
  SegmentSamples g;
  g.t = {0.0, t_end};
  g.x = {value, value};
  return InputSignal(HybridArc(validate_domain({{0.0, t_end, 0}}), {std::move(g)}, Interp::linear));
}

InputSignal InputSignal::sampled(std::vector<double> t, std::vector<State> values) {
  if (t.empty() || t.front() != 0.0) throw AnchorError("sampled input must start at t = 0");
  SegmentSamples g;
  g.t = std::move(t);
  g.x = std::move(values);
  const double t_end = g.t.back();
  return InputSignal(HybridArc(validate_domain({{0.0, t_end, 0}}), {std::move(g)}, Interp::linear));
}

State InputSignal::value_at_time(double t) const {
  const auto& segs = arc_.domain().segments();
  // Latest sample at or before t, scanning segments from the newest branch.
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    if (t < it->t_lo - kTimeEps) continue;
    const SegmentSamples& g = arc_.samples(it->j);
    auto pos = std::upper_bound(g.t.begin(), g.t.end(), t);
    if (pos == g.t.begin()) return g.x.front();
    return g.x[static_cast<std::size_t>(pos - g.t.begin()) - 1];
  }
  return arc_.samples(arc_.domain().j_min()).x.front();
}

MemoryArc memory_operator(const HybridArc& x, double t, long j, double delta) {
  const HybridTimeDomain& dom = x.domain();
  if (j < 0 || t < -kTimeEps || !dom.contains(t, j))
    throw OutOfDomain("(t, j) must lie in the forward domain");
  return detail::window_impl(
      dom.segments(), [&x](long jj) -> const SegmentSamples& { return x.samples(jj); },
      x.interpolation(), t, j, delta);
}

double sup_norm_input(const InputSignal& u, const HybridTime& from, const HybridTime& to) {
  const HybridArc& a = u.arc();
  const auto& dom = a.domain();
  if (!dom.contains(from.t, from.j) || !dom.contains(to.t, to.j))
    throw OutOfDomain("sup_norm_input window endpoints outside dom u");
  if (to < from) throw OutOfDomain("sup_norm_input needs from <= to");
  const double lo = from.sum(), hi = to.sum();
  double result = 0.0;
  for (const Segment& s : dom.segments()) {
    const SegmentSamples& g = a.samples(s.j);
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      const double sum = g.t[i] + static_cast<double>(s.j);
      if (sum < lo - kTimeEps || sum > hi + kTimeEps) continue;
      result = std::max(result, g.x[i].norm());
    }
  }
  return result;
}

double memory_sup_distance(const MemoryArc& phi, const std::function<double(const State&)>& dist_w) {
  const HybridArc& a = phi.arc();
  std::vector<const State*> flat;
  flat.reserve(a.total_samples());
  for (const Segment& s : a.domain().segments()) {
    const SegmentSamples& g = a.samples(s.j);
    for (const State& x : g.x) flat.push_back(&x);
  }
  return par::max_reduce(flat.size(), 0.0, [&](std::size_t i) { return dist_w(*flat[i]); });
}

}  // namespace hymem
