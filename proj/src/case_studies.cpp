#include "hymem/case_studies.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hymem/lyapunov.hpp"

namespace hymem {

namespace {
constexpr int kX = 0, kE = 1, kS = 2, kTau = 3, kL = 4;  // Example 1 layout

double sym_lambda_max(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw DimensionMismatch("lambda_max needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  return es.eigenvalues().maxCoeff();
}

double spectral_norm_sq(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
  return es.eigenvalues().maxCoeff();
}
}  // namespace

TimerWeight::TimerWeight(double a, double b, double c, double phi_at_0, double tau_max, double step)
    : step_(step), tau_max_(tau_max) {
  auto rhs = [a, b, c](double v) { return -a * v - b * v * v - c; };
  const std::size_t n = static_cast<std::size_t>(std::ceil(tau_max / step)) + 1;
  v_.reserve(n + 1);
  d_.reserve(n + 1);
  double v = phi_at_0;
  v_.push_back(v);
  d_.push_back(rhs(v));
  for (std::size_t i = 0; i < n; ++i) {
    const double k1 = rhs(v);
    const double k2 = rhs(v + 0.5 * step * k1);
    const double k3 = rhs(v + 0.5 * step * k2);
    const double k4 = rhs(v + step * k3);
    v += (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    v_.push_back(v);
    d_.push_back(rhs(v));
  }
}

double TimerWeight::value(double tau) const {
  if (tau < -1e-12 || tau > tau_max_ + 1e-12)
    throw DomainError("timer weight queried outside [0, " + std::to_string(tau_max_) + "]");
  tau = std::clamp(tau, 0.0, tau_max_);
  const double pos = tau / step_;
  std::size_t i = std::min(static_cast<std::size_t>(pos), v_.size() - 2);
  const double t0 = static_cast<double>(i) * step_;
  const double s = (tau - t0) / step_;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * v_[i] + ((s3 - 2 * s2 + s) * step_) * d_[i] +
         (-2 * s3 + 3 * s2) * v_[i + 1] + ((s3 - s2) * step_) * d_[i + 1];
}

namespace {

// Shared weight tables: the two Riccati-type timer ODEs of the example. The
// tables reach a little past tau_mati so stage evaluations during event
// localization stay inside.
const TimerWeight& phi_table(int l) {
  static const TimerWeight phi0(8.0, 64.0 / 7.0, 8.0, 2.0, kTauBar + 2e-3);
  static const TimerWeight phi1(10.0, 64.0 / 7.0, 15.0, 2.2, kTauBar + 2e-3);
  return l == 0 ? phi0 : phi1;
}

}  // namespace

double example1_phi(int l, double tau, const Example1Params& p) {
  if (l != 0 && l != 1) throw DomainError("logic flag must be 0 or 1");
  if (tau < -1e-12 || tau > p.tau_mati + 1e-12)
    throw DomainError("tau outside [0, tau_mati]");
  return phi_table(l).value(std::clamp(tau, 0.0, p.tau_mati));
}

Example1Build build_example1(const Example1Params& p) {
  if (!(p.eps > 0.0) || !(p.eps < p.tau_mati) || !(p.tau_mati <= kTauBar))
    throw ParamError("need 0 < eps < tau_mati <= tau_bar");
  if (!(p.tau_mad >= 0.0) || !(p.tau_mad <= p.tau_mati))
    throw ParamError("need 0 <= tau_mad <= tau_mati");
  if (!(p.r > 0.0)) throw ParamError("need r > 0");

  Example1Build b;
  b.params = p;
  b.delta = p.r + p.r / p.eps + 1.0;

  const double eps = p.eps, mati = p.tau_mati, mad = p.tau_mad, r = p.r;

  SystemDef sys;
  sys.delta = b.delta;
  sys.state_dim = 5;
  sys.input_dim = 1;
  sys.dist_w = [](const State& x) {
    return std::sqrt(x[kX] * x[kX] + x[kE] * x[kE] + x[kS] * x[kS]);
  };
  sys.flow_pred = [mati, mad](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    const bool l1 = h[kL] > 0.5;
    const double tau = h[kTau];
    return l1 ? (tau >= -1e-12 && tau <= mad + 1e-12) : (tau >= -1e-12 && tau <= mati + 1e-12);
  };
  sys.jump_pred = [eps, mati, mad](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    const bool l1 = h[kL] > 0.5;
    const double tau = h[kTau];
    return l1 ? (tau >= -1e-12 && tau <= mad + 1e-12) : (tau >= eps && tau <= mati + 1e-12);
  };
  sys.flow_map = [r](const MemoryArc& phi, const State& u) {
    const State h = phi.head();
    std::vector<State> out;
    // One selection per jump index available at depth r; k(-r) first.
    const long kmax = phi.max_jump_at(-r);
    for (long k = kmax; k >= phi.domain().j_min(); --k) {
      if (!phi.domain().contains(-r, k)) break;
      const double xd = phi.eval(-r, k)[kX];
      State f(5);
      f[kX] = -7.0 * h[kX] + xd + h[kE] + u[0];
      f[kE] = 5.0 * h[kX] - xd - h[kE] + u[0];
      f[kS] = 0.0;
      f[kTau] = 1.0;
      f[kL] = 0.0;
      out.push_back(std::move(f));
    }
    return out;
  };
  sys.jump_map = [](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    State g(5);
    if (h[kL] <= 0.5) {  // transmit
      g[kX] = h[kX];
      g[kE] = 0.5 * h[kE];
      g[kS] = 0.0;
      g[kTau] = 0.0;
      g[kL] = 1.0;
    } else {  // arrival applies the stored correction
      g[kX] = h[kX];
      g[kE] = h[kE] + h[kS];
      g[kS] = -h[kE] - h[kS];
      g[kTau] = h[kTau];
      g[kL] = 0.0;
    }
    return std::vector<State>{g};
  };
  b.sys = std::move(sys);

  CertificateSpec cert;
  cert.variant = Variant::PropD;
  cert.V_state.V = [](const State& x) {
    const double q = x[kE] + x[kS];
    return x[kX] * x[kX] + phi_table(x[kL] > 0.5 ? 1 : 0).value(x[kTau]) * q * q;
  };
  cert.lower_bound_fn = [](const State& x) { return x[kX] * x[kX]; };
  cert.upper_bound_fn = [](const State& x) {
    const double q = x[kE] + x[kS];
    return x[kX] * x[kX] + 2.2 * q * q;
  };
  cert.flow_decrease_fn = [](const State& x) { return x[kX] * x[kX] + x[kE] * x[kE]; };
  cert.gamma1 = ComparisonFunction::linear(0.5, FnClass::nondecreasing);
  cert.gamma2 = ComparisonFunction::power(2.0, 1.0, FnClass::nondecreasing);
  cert.alpha1 = ComparisonFunction::power(2.0, 1.0);
  cert.alpha2 = ComparisonFunction::power(2.0, 3.2);
  PersistenceSpec pers;
  pers.gamma_delta = ComparisonFunction::linear(0.5);
  pers.N_delta = 2.0;
  pers.target = PersistenceSpec::Target::jump;
  cert.persistence = pers;
  cert.atol = 1e-3;
  cert.rtol = 1e-3;
  cert.deriv_atol = 1e-3;
  b.cert = std::move(cert);

  b.sim.h = 1e-3;
  b.sim.horizon_t = 0.25;
  b.sim.horizon_j = 1000;
  b.sim.priority = Priority::jump_first;
  b.sim.zeno_guard = 8;
  b.sim.event_tol = 1e-9;

  // Side conditions the example assumes; evaluated on a dense grid, reported.
  b.phi0_geq_half_phi1_at_zero = true;
  b.phi1_geq_phi0_on_mad = true;
  const double half_phi1_0 = 0.5 * phi_table(1).value(0.0);
  for (double tau = 0.0; tau <= p.tau_mati + 1e-12; tau += 1e-4) {
    if (phi_table(0).value(std::min(tau, p.tau_mati)) < half_phi1_0)
      b.phi0_geq_half_phi1_at_zero = false;
    if (tau <= p.tau_mad + 1e-12 &&
        phi_table(1).value(std::min(tau, p.tau_mad)) < phi_table(0).value(std::min(tau, p.tau_mad)))
      b.phi1_geq_phi0_on_mad = false;
  }
  {
    double lo = 0.0, hi = phi_table(1).tau_max();
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (phi_table(1).value(mid) > 0.5 ? lo : hi) = mid;
    }
    b.tau_bar_computed = 0.5 * (lo + hi);
  }
  return b;
}

MemoryArc example1_initial_arc(const Example1Build& ex, std::uint64_t seed) {
  const Example1Params& p = ex.params;
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const double x0 = (uni(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uni(0.15, 0.9);
  const double amp = uni(0.0, 0.06);
  const double omega = uni(0.5, 2.5) * (2.0 * M_PI) / (4.0 * p.eps);
  const double phase = uni(0.0, 2.0 * M_PI);
  const double tau0 = uni(0.2 * p.eps, 0.7 * p.eps);
  const double target = uni(0.3, 0.95);

  auto wiggle = [&](double t) { return x0 * (1.0 + amp * std::sin(omega * t + phase)); };
  auto wiggle_d = [&](double t) { return x0 * amp * omega * std::cos(omega * t + phase); };

  // Synthetic seed history in M^Delta: full transmit/arrive cycles plus a cut
  // deepest flow piece so the depth lands inside [Delta, Delta + 1].
  const int cycles = 2;
  const double sigma = std::max(1e-4, 0.99 * p.eps - tau0);  // cut length of the deepest segment

  std::vector<Segment> segs;
  std::vector<SegmentSamples> samp;
  const double total_flow = tau0 + cycles * p.eps + sigma;
  double t_abs = -total_flow;
  long j = -2 * cycles - 1;

  auto add_flow = [&](double dur, double tau_from) {
    SegmentSamples g;
    const int npts = 6;
    for (int i = 0; i <= npts; ++i) {
      const double ts = t_abs + dur * i / npts;
      State x(5);
      x << wiggle(ts), 0.0, 0.0, tau_from + dur * i / npts, 0.0;
      State f(5);
      f << wiggle_d(ts), 0.0, 0.0, 1.0, 0.0;
      g.t.push_back(ts);
      g.x.push_back(x);
      g.f.push_back(f);
    }
    segs.push_back({t_abs, t_abs + dur, j});
    samp.push_back(std::move(g));
    t_abs += dur;
    ++j;
  };
  auto add_point = [&](double l_flag, double tau_val) {
    SegmentSamples g;
    State x(5);
    x << wiggle(t_abs), 0.0, 0.0, tau_val, l_flag;
    g.t.push_back(t_abs);
    g.x.push_back(x);
    g.f.push_back(State::Zero(5));
    segs.push_back({t_abs, t_abs, j});
    samp.push_back(std::move(g));
    ++j;
  };

  add_flow(sigma, p.eps - sigma);  // cut tail of the deepest transmit phase
  add_point(1.0, 0.0);             // transmit
  add_point(0.0, 0.0);             // instantaneous arrival
  for (int c = 1; c < cycles; ++c) {
    add_flow(p.eps, 0.0);
    add_point(1.0, 0.0);
    add_point(0.0, 0.0);
  }
  add_flow(tau0, 0.0);  // head piece ends at t = 0 with the timer at tau0

  MemoryArc seed_arc(HybridArc(validate_domain(std::move(segs)), std::move(samp), Interp::cubic_hermite));

  // Push the synthetic seed through the real dynamics so the window handed to
  // the checked run consists of simulated cycles only.
  SimConfig warm = ex.sim;
  warm.horizon_t = 0.05;
  warm.horizon_j = 100000;
  Solution w = simulate(ex.sys, seed_arc, InputSignal::zero(1, warm.horizon_t + 1.0), warm);
  const Segment& last = w.x.domain().segments().back();
  MemoryArc window = memory_operator(w.x, last.t_hi, last.j, ex.sys.delta);

  const double norm = memory_sup_distance(window, ex.sys.dist_w);
  const double scale = norm > 0.0 ? target / norm : 1.0;
  std::vector<Segment> osegs = window.domain().segments();
  std::vector<SegmentSamples> osamp;
  for (const Segment& s : osegs) {
    SegmentSamples g = window.arc().samples(s.j);
    for (auto& x : g.x)
      for (int d : {kX, kE, kS}) x[d] *= scale;
    for (auto& f : g.f)
      for (int d : {kX, kE, kS}) f[d] *= scale;
    osamp.push_back(std::move(g));
  }
  return MemoryArc(HybridArc(validate_domain(std::move(osegs)), std::move(osamp),
                             window.arc().interpolation()));
}

// ---------------------------------------------------------------------------
// Example 2
// ---------------------------------------------------------------------------

std::string to_string(Example2Case c) {
  switch (c) {
    case Example2Case::Case1: return "Case1";
    case Example2Case::Case2: return "Case2";
    case Example2Case::Case3: return "Case3";
    case Example2Case::Unclassified: return "Unclassified";
  }
  return "?";
}

double Example2Params::default_delta() const {
  return r + std::ceil(r / delta_impulse) + 0.25;
}

SystemDef build_example2(const Example2Params& p) {
  const int n = p.n();
  const int modes = p.modes();
  if (modes == 0) throw DimensionMismatch("need at least one mode");
  if (static_cast<int>(p.B.size()) != modes || static_cast<int>(p.C.size()) != modes ||
      static_cast<int>(p.D.size()) != modes || static_cast<int>(p.sigma.size()) != modes ||
      static_cast<int>(p.mu.size()) != modes)
    throw DimensionMismatch("per-mode arrays must have equal length");
  for (int q = 0; q < modes; ++q) {
    if (p.A[q].rows() != n || p.A[q].cols() != n || p.B[q].rows() != n || p.B[q].cols() != n ||
        p.D[q].rows() != n || p.D[q].cols() != n || p.C[q].rows() != n)
      throw DimensionMismatch("matrix dimensions inconsistent at mode " + std::to_string(q));
    if (!(p.sigma[q] > 0.0) || !(p.mu[q] > 0.0)) throw ParamError("sigma_p, mu_p must be positive");
  }
  if (!(p.delta_impulse > 0.0) || !(p.r > 0.0)) throw ParamError("need delta > 0 and r > 0");

  const double delta = p.memory_delta > 0.0 ? p.memory_delta : p.default_delta();
  const double r = p.r, period = p.delta_impulse;
  const int m = p.m();

  SystemDef sys;
  sys.delta = delta;
  sys.state_dim = n + 2;
  sys.input_dim = m;
  sys.dist_w = [n](const State& x) { return x.head(n).norm(); };
  sys.flow_pred = [n, period, modes](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    const int q = static_cast<int>(std::lround(h[n]));
    return q >= 0 && q < modes && h[n + 1] >= -1e-12 && h[n + 1] <= period + 1e-12;
  };
  sys.jump_pred = [n, period, modes](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    const int q = static_cast<int>(std::lround(h[n]));
    return q >= 0 && q < modes && h[n + 1] >= period - 1e-12;
  };
  sys.flow_map = [p, n, r](const MemoryArc& phi, const State& u) {
    const State h = phi.head();
    const int q = static_cast<int>(std::lround(h[n]));
    const State delayed = phi.eval_latest(-r);  // psi(-r, k(-r))
    State f(n + 2);
    Eigen::VectorXd xdot = p.A[q] * h.head(n) + p.B[q] * delayed.head(n);
    if (p.m() > 0 && u.size() > 0) xdot += p.C[q] * u;
    f.head(n) = xdot;
    f[n] = 0.0;
    f[n + 1] = 1.0;
    return std::vector<State>{std::move(f)};
  };
  sys.jump_map = [p, n](const MemoryArc& phi, const State&) {
    const State h = phi.head();
    const int q = static_cast<int>(std::lround(h[n]));
    std::vector<State> out;
    for (int next = 0; next < p.modes(); ++next) {
      State g(n + 2);
      g.head(n) = p.D[q] * h.head(n);
      g[n] = static_cast<double>(next);
      g[n + 1] = 0.0;
      out.push_back(std::move(g));
    }
    return out;
  };
  return sys;
}

Example2Classification classify_example2(const Example2Params& p, double eps_trigger) {
  Example2Classification c;
  const int modes = p.modes();
  const double delta = p.memory_delta > 0.0 ? p.memory_delta : p.default_delta();
  c.Lambda.resize(modes);
  c.Omega.resize(modes);
  c.lambda2_max_D.resize(modes);
  for (int q = 0; q < modes; ++q) {
    const double la = sym_lambda_max(p.A[q]);
    const double lb = sym_lambda_max(p.B[q]);
    // lambda_max of the symmetric part for square C, spectral norm otherwise.
    double lc = 0.0;
    if (p.m() > 0)
      lc = p.C[q].rows() == p.C[q].cols() ? sym_lambda_max(p.C[q])
                                          : std::sqrt(spectral_norm_sq(p.C[q]));
    c.Lambda[q] = 2.0 * p.sigma[q] * la + p.mu[q] + p.sigma[q] * lb + p.sigma[q] * lc;
    c.Omega[q] = p.sigma[q] * lb - p.mu[q] * std::exp(-p.eta * eps_trigger);
    c.lambda2_max_D[q] = spectral_norm_sq(p.D[q]);
  }

  auto all_of_modes = [&](auto pred) {
    for (int q = 0; q < modes; ++q)
      if (!pred(q)) return false;
    return true;
  };
  const double inv_varpi = 1.0 / p.varpi;
  if (all_of_modes([&](int q) {
        return c.Lambda[q] < inv_varpi && c.Omega[q] < 0.0 && c.lambda2_max_D[q] < 1.0;
      }))
    c.case_id = Example2Case::Case1;
  else if (all_of_modes([&](int q) {
             return -c.Lambda[q] > c.Omega[q] && c.Omega[q] >= 0.0 && c.lambda2_max_D[q] > 1.0;
           }))
    c.case_id = Example2Case::Case2;
  else if (all_of_modes([&](int q) {
             return c.Lambda[q] > 0.0 && c.Omega[q] >= 0.0 && c.lambda2_max_D[q] < 1.0;
           }))
    c.case_id = Example2Case::Case3;

  c.lambda_bar.assign(modes, std::numeric_limits<double>::quiet_NaN());
  for (int q = 0; q < modes; ++q) {
    if (c.case_id == Example2Case::Case2) {
      auto f = [&](double l) { return l + c.Lambda[q] + c.Omega[q] * std::exp(l * (delta + 1.0)); };
      auto root = hymem::detail::bisect_root(f, 0.0, -c.Lambda[q], 1e-10);
      if (root) c.lambda_bar[q] = *root;
    } else if (c.case_id == Example2Case::Case3) {
      auto f = [&](double l) { return -l + c.Lambda[q] + c.Omega[q] * std::exp(l * (delta + 1.0)); };
      double hi = std::max(1.0, 2.0 * c.Lambda[q]);
      bool bracketed = false;
      for (int it = 0; it < 60 && !bracketed; ++it, hi *= 2.0)
        if (f(hi) < 0.0) bracketed = true;
      if (bracketed) {
        auto root = hymem::detail::bisect_root(f, 0.0, hi / 2.0, 1e-10);
        if (root) c.lambda_bar[q] = *root;
      }
    }
  }
  return c;
}

LyapunovFunctional example2_lkf(const Example2Params& p) {
  const int n = p.n();
  const double r = p.r, eta = p.eta;
  auto sigma = p.sigma;
  auto mu = p.mu;
  LyapunovFunctional V;
  V.V = [n, r, eta, sigma, mu](const MemoryArc& phi) {
    const State head = phi.head();
    const int q = static_cast<int>(std::lround(head[n]));
    double val = sigma[static_cast<std::size_t>(q)] * head.head(n).squaredNorm();

    // Trapezoid over the newest-branch history grid on [-r, 0].
    double integral = 0.0;
    const auto& segs = phi.domain().segments();
    for (const Segment& s : segs) {
      const double lo = std::max(s.t_lo, -r);
      const double hi = std::min(s.t_hi, 0.0);
      if (lo >= hi) continue;
      // Newest branch: skip if a later segment also covers this span.
      if (s.j < 0 && phi.max_jump_at(0.5 * (lo + hi)) != s.j) continue;
      const SegmentSamples& g = phi.arc().samples(s.j);
      auto integrand = [&](double ts, const State& x) {
        const double w = eta == 0.0 ? 1.0 : std::exp(-eta * x[n + 1]);
        return w * x.head(n).squaredNorm();
      };
      double prev_t = lo;
      double prev_v = integrand(lo, phi.eval(lo, s.j));
      for (std::size_t i = 0; i < g.t.size(); ++i) {
        if (g.t[i] <= lo + 1e-15 || g.t[i] > hi + 1e-15) continue;
        const double ti = std::min(g.t[i], hi);
        const double vi = integrand(ti, g.x[i]);
        integral += 0.5 * (prev_v + vi) * (ti - prev_t);
        prev_t = ti;
        prev_v = vi;
      }
      if (prev_t < hi - 1e-15) {
        const double vh = integrand(hi, phi.eval(hi, s.j));
        integral += 0.5 * (prev_v + vh) * (hi - prev_t);
      }
    }
    return val + mu[static_cast<std::size_t>(q)] * integral;
  };
  return V;
}

MemoryArc example2_initial_arc(const Example2Params& p, const State& x0, int p0) {
  const int n = p.n();
  if (x0.size() != n) throw DimensionMismatch("x0 must have the plant dimension");
  const double delta = p.memory_delta > 0.0 ? p.memory_delta : p.default_delta();
  const double depth = delta + 0.5;
  State full(n + 2);
  full.head(n) = x0;
  full[n] = static_cast<double>(p0);
  full[n + 1] = 0.0;
  SegmentSamples g;
  const int npts = 8;
  for (int i = 0; i <= npts; ++i) {
    g.t.push_back(-depth + depth * i / npts);
    g.x.push_back(full);
    g.f.push_back(State::Zero(n + 2));
  }
  g.t.back() = 0.0;
  return MemoryArc(HybridArc(validate_domain({{-depth, 0.0, 0}}), {std::move(g)}, Interp::cubic_hermite));
}

Example2Build build_example2_case(int case_id) {
  Example2Build b;
  Example2Params p;
  auto mat1 = [](double v) { return Eigen::MatrixXd::Constant(1, 1, v); };
  p.sigma = {1.0};
  p.eta = 0.0;
  p.r = 0.1;
  p.varpi = 1.0;
  switch (case_id) {
    case 1:
      p.A = {mat1(-3.0)};
      p.B = {mat1(0.5)};
      p.C = {mat1(1.0)};
      p.D = {mat1(0.5)};
      p.mu = {1.0};
      p.delta_impulse = 1.0;
      break;
    case 2:
      p.A = {mat1(-0.6)};
      p.B = {mat1(0.5)};
      p.C = {mat1(0.0)};
      p.D = {mat1(1.5)};
      p.mu = {0.45};
      p.delta_impulse = 5.0;
      break;
    case 3:
      p.A = {mat1(1.0)};
      p.B = {mat1(1.0)};
      p.C = {mat1(0.0)};
      p.D = {mat1(0.5)};
      p.mu = {1.0};
      p.delta_impulse = 0.2;
      break;
    default: throw ParamError("case must be 1, 2 or 3");
  }
  p.memory_delta = p.default_delta();
  b.params = p;
  b.classification = classify_example2(p, p.delta_impulse);
  b.sys = build_example2(p);
  b.lkf = example2_lkf(p);

  CertificateSpec cert;
  cert.V_func = b.lkf;
  cert.alpha1 = ComparisonFunction::power(2.0, *std::min_element(p.sigma.begin(), p.sigma.end()));
  double a2 = 0.0;
  for (int q = 0; q < p.modes(); ++q) a2 = std::max(a2, p.sigma[q] + p.mu[q] * p.r);
  cert.alpha2 = ComparisonFunction::power(2.0, a2);
  cert.atol = 1e-3;
  cert.rtol = 1e-3;
  cert.deriv_atol = 1e-3;

  b.sim.h = 1e-3;
  b.sim.priority = Priority::jump_first;
  b.sim.zeno_guard = 4;
  b.sim.event_tol = 1e-9;
  b.sim.horizon_j = 1000000;

  switch (case_id) {
    case 1: {
      cert.variant = Variant::ThmG;
      cert.alpha3 = ComparisonFunction::power(2.0, 0.5, FnClass::PD);
      double trig = 0.0;
      for (int q = 0; q < p.modes(); ++q)
        trig = std::max(trig, p.varpi * p.sigma[q] * sym_lambda_max(p.C[q]));
      cert.rho = ComparisonFunction::power(2.0, std::max(trig, 1e-12));
      b.iss_beta = {2.0, 1.8, 0.8};
      b.iss_gamma = ComparisonFunction::linear(2.0);
      b.sim.horizon_t = 3.0;
      break;
    }
    case 2: {
      cert.variant = Variant::ThmH;
      cert.lambda1 = 0.19;
      cert.lambda2 = 0.01;
      cert.mu = 2.21;
      cert.eps = p.delta_impulse;
      cert.N0 = 1;
      cert.rho = ComparisonFunction::power(2.0, 1.0);
      b.lambda_bar_cert = solve_lambda_bar(cert.lambda1, cert.lambda2, p.memory_delta);
      cert.lambda_envelope = 0.165;
      b.sim.horizon_t = 17.0;
      b.sim.h = 2e-3;
      break;
    }
    case 3: {
      cert.variant = Variant::ThmI;
      cert.lambda1 = 4.0;
      cert.lambda2 = 0.0;
      cert.mu = 0.4;
      cert.eps = p.delta_impulse;
      cert.N0 = 1;
      cert.rho = ComparisonFunction::power(2.0, 1.0);
      cert.lambda_envelope = lambda_thm7(cert.lambda1, cert.lambda2, cert.mu, cert.N0, p.memory_delta);
      b.sim.horizon_t = 4.0;
      break;
    }
    default: break;
  }
  b.cert = std::move(cert);
  return b;
}

}  // namespace hymem
