#include "hymem/lyapunov.hpp"

#include <algorithm>
#include <cmath>

namespace hymem {

std::string to_string(FnClass c) {
  switch (c) {
    case FnClass::K: return "K";
    case FnClass::Kinf: return "Kinf";
    case FnClass::PD: return "PD";
    case FnClass::nondecreasing: return "nondecreasing";
  }
  return "?";
}

ComparisonFunction ComparisonFunction::linear(double k, FnClass c) {
  return {[k](double v) { return k * v; }, c, "linear(" + std::to_string(k) + ")"};
}

ComparisonFunction ComparisonFunction::power(double p, double k, FnClass c) {
  return {[p, k](double v) { return k * std::pow(v, p); }, c,
          "power(p=" + std::to_string(p) + ",k=" + std::to_string(k) + ")"};
}

ComparisonFunction ComparisonFunction::saturating() {
  return {[](double v) { return v / (1.0 + v); }, FnClass::K, "saturating"};
}

ComparisonFunction ComparisonFunction::zero() {
  return {[](double) { return 0.0; }, FnClass::nondecreasing, "zero"};
}

ComparisonFunction ComparisonFunction::table(std::vector<std::pair<double, double>> points,
                                             FnClass c) {
  if (points.size() < 2) throw ParamError("table comparison function needs >= 2 points");
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i].first < points[i + 1].first))
      throw ParamError("table abscissae must be strictly increasing");
  auto f = [pts = std::move(points)](double v) {
    if (v <= pts.front().first) return pts.front().second;
    if (v >= pts.back().first) return pts.back().second;
    auto it = std::upper_bound(pts.begin(), pts.end(), v,
                               [](double a, const auto& p) { return a < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (v - lo.first) / (hi.first - lo.first);
    return (1.0 - w) * lo.second + w * hi.second;
  };
  return {std::move(f), c, "table"};
}

CheckReport validate_class(const ComparisonFunction& fn, const std::vector<double>& grid,
                           double unbounded_threshold) {
  CheckReport rep;
  rep.variant = "class-" + to_string(fn.declared);
  if (grid.empty() || grid.front() != 0.0) throw ParamError("class grid must start at 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1])) throw ParamError("class grid must be strictly increasing");

  double prev = fn(grid.front());
  rep.samples_checked = static_cast<long>(grid.size());
  const bool need_zero = fn.declared != FnClass::nondecreasing;
  if (need_zero && std::abs(prev) > 0.0) rep.record(0.0, 0, "f(0)=0", std::abs(prev), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = grid[i];
    const double fv = fn(v);
    if (!std::isfinite(fv)) throw NonFiniteValue("comparison function not finite at v=" + std::to_string(v));
    switch (fn.declared) {
      case FnClass::K:
      case FnClass::Kinf:
        if (!(fv > prev)) rep.record(v, 0, "strictly-increasing", prev, fv);
        break;
      case FnClass::PD:
        if (!(fv > 0.0)) rep.record(v, 0, "positive-definite", 0.0, fv);
        break;
      case FnClass::nondecreasing:
        if (fv < prev) rep.record(v, 0, "nondecreasing", prev, fv);
        break;
    }
    prev = fv;
  }
  if (fn.declared == FnClass::Kinf && !(fn(grid.back()) > unbounded_threshold))
    rep.record(grid.back(), 0, "unbounded", unbounded_threshold, fn(grid.back()));
  return rep;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ParamError("log_grid needs 0 < lo < hi, n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
  return g;
}

double directional_deriv(const LyapunovState& V, const State& x, const State& f) {
  const double v0 = V(x);
  if (!std::isfinite(v0)) throw NonFiniteValue("V(x) not finite");
  double best = -std::numeric_limits<double>::infinity();
  for (double h : {1e-4, 1e-5, 1e-6}) {
    const double q = (V(x + h * f) - v0) / h;
    if (!std::isfinite(q)) throw NonFiniteValue("difference quotient not finite");
    best = std::max(best, q);
  }
  return best;
}

double dini_functional_deriv(const LyapunovFunctional& V, const Solution& sol, double t, long j,
                             double delta) {
  const Segment& seg = sol.x.domain().segment(j);
  const double v0 = V(memory_operator(sol.x, t, j, delta));
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double h : {1e-3, 1e-4}) {
    if (t + h > seg.t_hi) continue;
    any = true;
    const double q = (V(memory_operator(sol.x, t + h, j, delta)) - v0) / h;
    if (!std::isfinite(q)) throw NonFiniteValue("Dini quotient not finite");
    best = std::max(best, q);
  }
  if (!any) throw OutOfDomain("no room ahead of (t, j) for the Dini quotient");
  return best;
}

double vbar(const LyapunovState& V, const MemoryArc& phi, double delta) {
  const HybridArc& a = phi.arc();
  double best = -std::numeric_limits<double>::infinity();
  for (const Segment& s : a.domain().segments()) {
    const SegmentSamples& g = a.samples(s.j);
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      if (g.t[i] + static_cast<double>(s.j) < -delta - 1.0 - 1e-12) continue;
      best = std::max(best, V(g.x[i]));
    }
  }
  return best;
}

double vhat(const LyapunovFunctional& V, const Solution& sol, double t, long j, double delta) {
  if (!sol.x.domain().contains(t, j) || j < 0 || t < 0.0)
    throw OutOfDomain("vhat needs (t, j) in the forward domain");
  const double now = t + static_cast<double>(j);
  double best = V(memory_operator(sol.x, t, j, delta));  // offset (0, 0); also the fallback
  for (const Segment& s : sol.x.domain().segments()) {
    if (s.j < 0 || s.j > j) continue;
    const SegmentSamples& g = sol.x.samples(s.j);
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      const double ts = g.t[i];
      if (ts < 0.0) continue;
      const double sum = ts + static_cast<double>(s.j);
      if (sum > now + 1e-12 || sum < now - delta - 1.0 - 1e-12) continue;
      if (ts == t && s.j == j) continue;
      best = std::max(best, V(memory_operator(sol.x, ts, s.j, delta)));
    }
  }
  return best;
}

CheckReport check_small_gain(const ComparisonFunction& fn, const std::vector<double>& grid) {
  CheckReport rep;
  rep.variant = "small-gain";
  rep.atol = 0.0;
  rep.rtol = 0.0;
  for (double v : grid) {
    if (!(v > 0.0)) throw ParamError("small gain grid must be positive");
    ++rep.samples_checked;
    const double fv = fn(v);
    if (!(fv < v)) rep.record(v, 0, "rho(v)<v", fv, v);
  }
  return rep;
}

CheckReport check_dwell_band(const HybridTimeDomain& d, double eps, long n0) {
  if (!(eps > 0.0) || n0 < 1) throw ParamError("dwell band needs eps > 0, N0 >= 1");
  CheckReport rep;
  rep.variant = "dwell-band";
  for (const Segment& s : d.segments()) {
    if (s.j < 0) continue;
    for (double ts : {std::max(s.t_lo, 0.0), s.t_hi}) {
      ++rep.samples_checked;
      const double lo = ts / eps - static_cast<double>(n0);
      const double hi = ts / eps + static_cast<double>(n0);
      const double jv = static_cast<double>(s.j);
      if (jv < lo - rep.atol) rep.record(ts, s.j, "j>=t/eps-N0", lo, jv);
      if (jv > hi + rep.atol) rep.record(ts, s.j, "j<=t/eps+N0", jv, hi);
    }
  }
  return rep;
}

double adt_margin(double lambda1, double mu, double eps) {
  if (!(lambda1 > 0.0) || !(eps > 0.0)) throw DomainError("adt_margin needs lambda1 > 0, eps > 0");
  if (mu < 1.0) throw DomainError("adt_margin needs mu >= 1");
  return lambda1 * eps - std::log(mu);
}

double radt_margin(double lambda1, double mu, double eps) {
  if (!(lambda1 > 0.0) || !(eps > 0.0)) throw DomainError("radt_margin needs lambda1 > 0, eps > 0");
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("radt_margin needs mu in (0, 1)");
  return lambda1 * eps + std::log(mu);
}

namespace detail {

std::optional<double> bisect_root(const std::function<double(double)>& g, double lo, double hi,
                                  double residual_tol, int max_iter) {
  double glo = g(lo), ghi = g(hi);
  if (std::abs(glo) <= residual_tol) return lo;
  if (std::abs(ghi) <= residual_tol) return hi;
  if (glo * ghi > 0.0) return std::nullopt;
  double mid = lo;
  for (int i = 0; i < max_iter; ++i) {
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= residual_tol) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace detail

double solve_lambda_bar(double lambda1, double lambda2, double delta) {
  if (!(lambda1 > lambda2) || lambda2 < 0.0)
    throw DomainError("solve_lambda_bar needs lambda1 > lambda2 >= 0");
  auto gamma = [=](double l) { return l - lambda1 + lambda2 * std::exp(l * (delta + 1.0)); };
  // Gamma(0) = lambda2 - lambda1 < 0 and Gamma(lambda1) >= 0: root in [0, lambda1].
  auto root = detail::bisect_root(gamma, 0.0, lambda1, 1e-10);
  if (!root) throw DomainError("lambda-bar root not bracketed");
  return *root;
}

double lambda_thm7(double lambda1, double lambda2, double mu, long n0, double delta) {
  if (lambda1 < 0.0 || lambda2 < 0.0) throw DomainError("lambda_thm7 needs lambda1, lambda2 >= 0");
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("lambda_thm7 needs mu in (0, 1)");
  if (n0 < 1) throw DomainError("lambda_thm7 needs N0 >= 1");
  return lambda1 + lambda2 * std::pow(mu, static_cast<double>(-n0)) * std::exp(delta + 1.0);
}

CheckReport check_persistence(const HybridTimeDomain& d, const PersistenceSpec& spec) {
  if (!(spec.N_delta > 0.0)) throw ParamError("persistence needs N_delta > 0");
  CheckReport rep;
  rep.variant = spec.target == PersistenceSpec::Target::flow ? "persistence-flow" : "persistence-jump";
  for (const Segment& s : d.segments()) {
    if (s.j < 0) continue;
    for (double ts : {std::max(s.t_lo, 0.0), s.t_hi}) {
      const double sum = ts + static_cast<double>(s.j);
      if (!(sum > 0.0)) continue;
      ++rep.samples_checked;
      const double bound = spec.gamma_delta(sum) - spec.N_delta;
      const double lhs = spec.target == PersistenceSpec::Target::flow ? ts : static_cast<double>(s.j);
      if (!(lhs > bound - rep.atol))
        rep.record(ts, s.j, spec.target == PersistenceSpec::Target::flow ? "C.2" : "D.2", bound, lhs);
    }
  }
  if (rep.samples_checked == 0) rep.vacuous = true;
  return rep;
}

}  // namespace hymem
