#include "hymem/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "hymem/parallel.hpp"

namespace hymem {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::ThmA: return "ThmA";
    case Variant::ThmB: return "ThmB";
    case Variant::PropC: return "PropC";
    case Variant::PropD: return "PropD";
    case Variant::ThmE: return "ThmE";
    case Variant::ThmF: return "ThmF";
    case Variant::ThmG: return "ThmG";
    case Variant::PropGflow: return "PropG-flow";
    case Variant::PropGjump: return "PropG-jump";
    case Variant::ThmH: return "ThmH";
    case Variant::ThmI: return "ThmI";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  for (Variant v : {Variant::ThmA, Variant::ThmB, Variant::PropC, Variant::PropD, Variant::ThmE,
                    Variant::ThmF, Variant::ThmG, Variant::PropGflow, Variant::PropGjump,
                    Variant::ThmH, Variant::ThmI})
    if (to_string(v) == s) return v;
  throw SchemaError("unknown certificate variant: " + s);
}

bool is_razumikhin(Variant v) {
  switch (v) {
    case Variant::ThmA:
    case Variant::ThmB:
    case Variant::PropC:
    case Variant::PropD:
    case Variant::ThmE:
    case Variant::ThmF: return true;
    default: return false;
  }
}

void CertificateSpec::validate() const {
  const bool raz = is_razumikhin(variant);
  if (raz && !V_state.V) throw SchemaError(to_string(variant) + " needs V_state");
  if (!raz && !V_func.V) throw SchemaError(to_string(variant) + " needs V_func");
  if (!(alpha1.valid() || lower_bound_fn) || !(alpha2.valid() || upper_bound_fn))
    throw SchemaError("sandwich bounds alpha1/alpha2 (or structured bounds) required");
  switch (variant) {
    case Variant::ThmA:
      if (!alpha3.valid() || !rho.valid() || !gamma1.valid() || !gamma2.valid())
        throw SchemaError("ThmA needs alpha3, rho, gamma1, gamma2");
      break;
    case Variant::ThmB:
    case Variant::PropC:
    case Variant::PropD:
      if (!(rho.valid() || flow_decrease_fn) || !gamma1.valid() || !gamma2.valid())
        throw SchemaError(to_string(variant) + " needs rho (or a flow decrease target), gamma1, gamma2");
      if ((variant == Variant::PropC || variant == Variant::PropD) && !persistence)
        throw SchemaError(to_string(variant) + " needs a persistence spec");
      break;
    case Variant::ThmE:
      if (!(lambda1 > 0.0)) throw SchemaError("ThmE needs lambda1 > 0");
      if (!(mu >= 1.0)) throw SchemaError("ThmE needs mu >= 1");
      if (!(eps > 0.0) || N0 < 1) throw SchemaError("ThmE needs eps > 0 and N0 >= 1");
      if (!gamma1.valid() || !gamma2.valid()) throw SchemaError("ThmE needs gamma1, gamma2");
      break;
    case Variant::ThmF:
      if (!(lambda1 > 0.0)) throw SchemaError("ThmF needs lambda1 > 0");
      if (!(mu > 0.0 && mu < 1.0)) throw SchemaError("ThmF needs mu in (0, 1)");
      if (!(eps > 0.0) || N0 < 1) throw SchemaError("ThmF needs eps > 0 and N0 >= 1");
      if (!gamma1.valid() || !gamma2.valid()) throw SchemaError("ThmF needs gamma1, gamma2");
      break;
    case Variant::ThmG:
    case Variant::PropGflow:
    case Variant::PropGjump:
      if (!alpha3.valid()) throw SchemaError(to_string(variant) + " needs alpha3");
      if (!rho.valid()) throw SchemaError(to_string(variant) + " needs the input trigger rho");
      if ((variant != Variant::ThmG) && !persistence)
        throw SchemaError(to_string(variant) + " needs a persistence spec");
      break;
    case Variant::ThmH:
      if (!(lambda1 > lambda2) || lambda2 < 0.0) throw SchemaError("ThmH needs lambda1 > lambda2 >= 0");
      if (!(mu > 1.0)) throw SchemaError("ThmH needs mu > 1");
      if (!(eps > 0.0) || N0 < 1) throw SchemaError("ThmH needs eps > 0 and N0 >= 1");
      if (!rho.valid()) throw SchemaError("ThmH needs the input trigger rho");
      break;
    case Variant::ThmI:
      if (lambda1 < 0.0 || lambda2 < 0.0) throw SchemaError("ThmI needs lambda1, lambda2 >= 0");
      if (!(mu > 0.0 && mu < 1.0)) throw SchemaError("ThmI needs mu in (0, 1)");
      if (!(eps > 0.0) || N0 < 1) throw SchemaError("ThmI needs eps > 0 and N0 >= 1");
      if (!rho.valid()) throw SchemaError("ThmI needs the input trigger rho");
      break;
  }
}

double KLLEnvelope::operator()(double r, double t, double j) const {
  return scale * r * std::exp(-rate * t) * std::pow(jump_factor, j);
}

namespace detail {

SampleTable build_table(const HybridArc& arc) {
  SampleTable tab;
  const auto& segs = arc.domain().segments();
  std::size_t n = arc.total_samples();
  tab.t.reserve(n);
  tab.j.reserve(n);
  tab.tj.reserve(n);
  tab.x.reserve(n);
  tab.f.reserve(n);
  tab.forward.reserve(n);
  tab.flow_sample.reserve(n);
  tab.pre_jump.reserve(n);
  tab.room_ahead.reserve(n);
  for (std::size_t si = 0; si < segs.size(); ++si) {
    const Segment& s = segs[si];
    const SegmentSamples& g = arc.samples(s.j);
    const bool has_next = si + 1 < segs.size();
    const bool positive_len = g.t.size() > 1;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
      tab.t.push_back(g.t[i]);
      tab.j.push_back(s.j);
      tab.tj.push_back(g.t[i] + static_cast<double>(s.j));
      tab.x.push_back(&g.x[i]);
      tab.f.push_back(g.has_derivatives() ? &g.f[i] : nullptr);
      tab.forward.push_back(static_cast<char>(g.t[i] >= 0.0 && s.j >= 0));
      tab.flow_sample.push_back(static_cast<char>(positive_len));
      tab.pre_jump.push_back(static_cast<char>(has_next && i + 1 == g.t.size()));
      tab.room_ahead.push_back(s.t_hi - g.t[i]);
    }
  }
  return tab;
}

std::vector<double> sliding_window_max(const std::vector<double>& tj,
                                       const std::vector<double>& val, double width,
                                       const std::vector<char>* mask) {
  const std::size_t n = tj.size();
  std::vector<double> out(n, -std::numeric_limits<double>::infinity());
  std::deque<std::size_t> dq;  // indices with decreasing val
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask || (*mask)[i]) {
      while (!dq.empty() && val[dq.back()] <= val[i]) dq.pop_back();
      dq.push_back(i);
    }
    while (!dq.empty() && tj[dq.front()] < tj[i] - width - 1e-12) dq.pop_front();
    out[i] = dq.empty() ? -std::numeric_limits<double>::infinity() : val[dq.front()];
  }
  return out;
}

}  // namespace detail

namespace {

using detail::SampleTable;

struct Prepared {
  SampleTable tab;
  std::vector<double> u_norm;  // |u| at each sample (0 in the memory part)
  std::vector<std::size_t> fwd;  // indices of forward samples, in order
};

Prepared prepare(const CheckContext& ctx) {
  Prepared p;
  p.tab = detail::build_table(ctx.sol.x);
  const std::size_t n = p.tab.t.size();
  p.u_norm.assign(n, 0.0);
  const bool have_u = !ctx.sol.u.domain().empty();
  for (std::size_t i = 0; i < n; ++i) {
    if (p.tab.forward[i]) {
      p.fwd.push_back(i);
      if (have_u && ctx.sol.u.domain().contains(p.tab.t[i], p.tab.j[i]))
        p.u_norm[i] = ctx.sol.u.eval(p.tab.t[i], p.tab.j[i]).norm();
    }
  }
  return p;
}

std::vector<double> values_over_samples(const SampleTable& tab,
                                        const std::function<double(const State&)>& fn) {
  std::vector<double> out(tab.t.size());
  par::for_each_index(tab.t.size(), [&](std::size_t i) { out[i] = fn(*tab.x[i]); });
  return out;
}

// V over the memory window at every forward sample (the heavy Krasovskii kernel).
std::vector<double> functional_over_forward(const CheckContext& ctx, const Prepared& p,
                                            const LyapunovFunctional& V) {
  std::vector<double> out(p.fwd.size());
  par::for_each_index(p.fwd.size(), [&](std::size_t k) {
    const std::size_t i = p.fwd[k];
    out[k] = V(memory_operator(ctx.sol.x, p.tab.t[i], p.tab.j[i], ctx.delta));
  });
  return out;
}

double phi0_norm(const CheckContext& ctx) {
  return memory_sup_distance(memory_operator(ctx.sol.x, 0.0, 0, ctx.delta), ctx.dist_w);
}

}  // namespace

CheckReport check_sandwich(const CertificateSpec& spec, const CheckContext& ctx) {
  CheckReport rep;
  rep.variant = to_string(spec.variant);
  rep.atol = spec.atol;
  rep.rtol = spec.rtol;
  Prepared p = prepare(ctx);
  const std::size_t nf = p.fwd.size();
  const bool raz = is_razumikhin(spec.variant);
  const std::string cond = raz ? "A.1" : "G.1";

  std::vector<double> v(nf), low(nf), up(nf);
  std::vector<double> dw = values_over_samples(p.tab, ctx.dist_w);
  std::vector<double> dw_win;
  std::vector<double> vf;
  if (!raz) {
    vf = functional_over_forward(ctx, p, spec.V_func);
    dw_win = detail::sliding_window_max(p.tab.tj, dw, ctx.delta + 1.0);
  }
  par::for_each_index(nf, [&](std::size_t k) {
    const std::size_t i = p.fwd[k];
    const State& x = *p.tab.x[i];
    v[k] = raz ? spec.V_state(x) : vf[k];
    low[k] = spec.lower_bound_fn ? spec.lower_bound_fn(x) : spec.alpha1(dw[i]);
    // (G.1) upper bound reads the memory sup ||phi||_W on the right.
    up[k] = spec.upper_bound_fn ? spec.upper_bound_fn(x)
                                : spec.alpha2(raz ? dw[i] : dw_win[i]);
  });
  for (std::size_t k = 0; k < nf; ++k) {
    const std::size_t i = p.fwd[k];
    ++rep.samples_checked;
    if (!rep.within(low[k], v[k]))
      rep.record(p.tab.t[i], p.tab.j[i], cond + "-lower", low[k], v[k]);
    if (!rep.within(v[k], up[k])) rep.record(p.tab.t[i], p.tab.j[i], cond + "-upper", v[k], up[k]);
  }
  return rep;
}

namespace {

// Shared Razumikhin scaffolding: V over all samples, the running window sup
// V-bar, and the trigger V(x) >= max{gamma1(V-bar), gamma2(|u|)}.
struct Razui {
  std::vector<double> v_all;
  std::vector<double> vbar_all;
  std::vector<char> trigger;  // indexed like the table; forward samples only
};

Razui razumikhin_prep(const CertificateSpec& spec, const CheckContext& ctx, const Prepared& p) {
  Razui r;
  r.v_all = values_over_samples(p.tab, spec.V_state.V);
  r.vbar_all = detail::sliding_window_max(p.tab.tj, r.v_all, ctx.delta + 1.0);
  r.trigger.assign(p.tab.t.size(), 0);
  for (std::size_t i : p.fwd) {
    const double thr = std::max(spec.gamma1(r.vbar_all[i]), spec.gamma2(p.u_norm[i]));
    r.trigger[i] = static_cast<char>(r.v_all[i] >= thr);
  }
  return r;
}

}  // namespace

CheckReport check_razumikhin_flow(const CertificateSpec& spec, const CheckContext& ctx, double tol) {
  if (!is_razumikhin(spec.variant)) throw SchemaError("flow check needs a Razumikhin variant");
  CheckReport rep;
  rep.variant = to_string(spec.variant) + "/flow";
  rep.atol = tol;
  rep.rtol = spec.rtol;
  rep.trigger_hits = 0;
  Prepared p = prepare(ctx);
  Razui rz = razumikhin_prep(spec, ctx, p);

  std::vector<double> dw = values_over_samples(p.tab, ctx.dist_w);
  std::vector<std::size_t> pts;
  for (std::size_t i : p.fwd)
    if (p.tab.flow_sample[i] && p.tab.f[i]) pts.push_back(i);

  std::string cond;
  std::function<double(std::size_t)> rhs_of;
  switch (spec.variant) {
    case Variant::ThmA:
      cond = "A.2";
      rhs_of = [&](std::size_t i) { return -spec.alpha3(rz.v_all[i]); };
      break;
    case Variant::ThmB:
    case Variant::PropD:
      cond = "B.1";
      rhs_of = [&](std::size_t i) {
        return spec.flow_decrease_fn ? -spec.flow_decrease_fn(*p.tab.x[i]) : -spec.rho(dw[i]);
      };
      break;
    case Variant::PropC:
      cond = "C.1";
      rhs_of = [](std::size_t) { return 0.0; };
      break;
    case Variant::ThmE:
      cond = "E.1";
      rhs_of = [&](std::size_t i) { return -spec.lambda1 * rz.v_all[i]; };
      break;
    case Variant::ThmF:
      cond = "F.1";
      rhs_of = [&](std::size_t i) { return spec.lambda1 * rz.v_all[i]; };
      break;
    default: throw SchemaError("unhandled Razumikhin flow variant");
  }

  std::vector<double> lhs(pts.size());
  par::for_each_index(pts.size(), [&](std::size_t k) {
    const std::size_t i = pts[k];
    lhs[k] = rz.trigger[i] ? directional_deriv(spec.V_state, *p.tab.x[i], *p.tab.f[i]) : 0.0;
  });
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::size_t i = pts[k];
    ++rep.samples_checked;
    if (!rz.trigger[i]) continue;
    ++rep.trigger_hits;
    const double rhs = rhs_of(i);
    if (!rep.within(lhs[k], rhs)) rep.record(p.tab.t[i], p.tab.j[i], cond, lhs[k], rhs);
  }
  rep.vacuous = rep.trigger_hits == 0;
  return rep;
}

CheckReport check_razumikhin_jump(const CertificateSpec& spec, const CheckContext& ctx, double tol) {
  if (!is_razumikhin(spec.variant)) throw SchemaError("jump check needs a Razumikhin variant");
  CheckReport rep;
  rep.variant = to_string(spec.variant) + "/jump";
  rep.atol = tol;
  rep.rtol = spec.rtol;
  rep.trigger_hits = 0;
  Prepared p = prepare(ctx);
  Razui rz = razumikhin_prep(spec, ctx, p);
  std::vector<double> dw = values_over_samples(p.tab, ctx.dist_w);

  const bool unconditional = spec.variant == Variant::ThmA;  // A.3 has no trigger
  for (std::size_t i = 0; i + 1 < p.tab.t.size(); ++i) {
    if (!p.tab.pre_jump[i] || !p.tab.forward[i]) continue;
    const std::size_t post = i + 1;
    ++rep.samples_checked;
    if (!unconditional && !rz.trigger[i]) continue;
    ++rep.trigger_hits;
    const double vm = rz.v_all[i];
    const double vp = rz.v_all[post];
    double lhs = vp, rhs = 0.0;
    std::string cond;
    switch (spec.variant) {
      case Variant::ThmA:
        cond = "A.3";
        rhs = spec.rho(rz.vbar_all[i]);
        break;
      case Variant::ThmB:
      case Variant::PropC:
        cond = "B.2";
        lhs = vp - vm;
        rhs = -spec.rho(dw[i]);
        break;
      case Variant::PropD:
        cond = "D.1";
        rhs = vm;
        break;
      case Variant::ThmE:
        cond = "E.2";
        rhs = spec.mu * vm;
        break;
      case Variant::ThmF:
        cond = "F.2";
        rhs = spec.mu * vm;
        break;
      default: throw SchemaError("unhandled Razumikhin jump variant");
    }
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], cond, lhs, rhs);
  }
  rep.vacuous = !unconditional && rep.trigger_hits == 0;
  return rep;
}

CheckReport check_krasovskii(const CertificateSpec& spec, const CheckContext& ctx, double tol) {
  if (is_razumikhin(spec.variant)) throw SchemaError("Krasovskii check needs a functional variant");
  CheckReport rep;
  rep.variant = to_string(spec.variant) + "/krasovskii";
  rep.atol = tol;
  rep.rtol = spec.rtol;
  rep.trigger_hits = 0;
  Prepared p = prepare(ctx);
  const std::size_t nf = p.fwd.size();
  std::vector<double> dw = values_over_samples(p.tab, ctx.dist_w);
  std::vector<double> vf = functional_over_forward(ctx, p, spec.V_func);

  // V-hat by a sliding max of the functional values over forward samples.
  std::vector<double> vf_tj(nf), vhat_f;
  for (std::size_t k = 0; k < nf; ++k) vf_tj[k] = p.tab.tj[p.fwd[k]];
  const bool needs_vhat = spec.variant == Variant::ThmH || spec.variant == Variant::ThmI;
  if (needs_vhat) vhat_f = detail::sliding_window_max(vf_tj, vf, ctx.delta + 1.0);

  std::vector<char> trigger(nf, 0);
  for (std::size_t k = 0; k < nf; ++k)
    trigger[k] = static_cast<char>(vf[k] >= spec.rho(p.u_norm[p.fwd[k]]));

  // Flow samples with room for the Dini quotient.
  const double h_min = 1e-4;
  std::vector<std::size_t> flow_k;
  for (std::size_t k = 0; k < nf; ++k) {
    const std::size_t i = p.fwd[k];
    if (p.tab.flow_sample[i] && p.tab.room_ahead[i] >= h_min) flow_k.push_back(k);
  }

  std::string flow_cond, jump_cond;
  std::function<double(std::size_t)> flow_rhs;  // indexed by k
  switch (spec.variant) {
    case Variant::ThmG:
      flow_cond = "G.2";
      flow_rhs = [&](std::size_t k) { return -spec.alpha3(dw[p.fwd[k]]); };
      jump_cond = "G.3";
      break;
    case Variant::PropGflow:
      flow_cond = "P3.flow";
      flow_rhs = [](std::size_t) { return 0.0; };
      jump_cond = "P3.jump";
      break;
    case Variant::PropGjump:
      flow_cond = "P4.flow";
      flow_rhs = [&](std::size_t k) { return -spec.alpha3(dw[p.fwd[k]]); };
      jump_cond = "P4.jump";
      break;
    case Variant::ThmH:
      flow_cond = "H.1";
      flow_rhs = [&](std::size_t k) { return -spec.lambda1 * vf[k] + spec.lambda2 * vhat_f[k]; };
      jump_cond = "H.2";
      break;
    case Variant::ThmI:
      flow_cond = "I.1";
      flow_rhs = [&](std::size_t k) { return spec.lambda1 * vf[k] + spec.lambda2 * vhat_f[k]; };
      jump_cond = "I.2";
      break;
    default: throw SchemaError("unhandled Krasovskii variant");
  }

  std::vector<double> dini(flow_k.size());
  par::for_each_index(flow_k.size(), [&](std::size_t kk) {
    const std::size_t k = flow_k[kk];
    const std::size_t i = p.fwd[k];
    dini[kk] = trigger[k]
                   ? dini_functional_deriv(spec.V_func, ctx.sol, p.tab.t[i], p.tab.j[i], ctx.delta)
                   : 0.0;
  });
  for (std::size_t kk = 0; kk < flow_k.size(); ++kk) {
    const std::size_t k = flow_k[kk];
    const std::size_t i = p.fwd[k];
    ++rep.samples_checked;
    if (!trigger[k]) continue;
    ++rep.trigger_hits;
    const double rhs = flow_rhs(k);
    if (!rep.within(dini[kk], rhs)) rep.record(p.tab.t[i], p.tab.j[i], flow_cond, dini[kk], rhs);
  }

  // Jumps: compare V on the pre-jump window against the post-jump window.
  for (std::size_t k = 0; k + 1 < nf; ++k) {
    const std::size_t i = p.fwd[k];
    if (!p.tab.pre_jump[i]) continue;
    const std::size_t kpost = k + 1;
    ++rep.samples_checked;
    if (!trigger[k]) continue;
    ++rep.trigger_hits;
    double lhs = vf[kpost], rhs = 0.0;
    switch (spec.variant) {
      case Variant::ThmG:
      case Variant::PropGflow:
        rhs = vf[k] - spec.alpha3(dw[i]);
        break;
      case Variant::PropGjump:
        rhs = vf[k];
        break;
      case Variant::ThmH:
      case Variant::ThmI:
        rhs = spec.mu * vf[k];
        break;
      default: break;
    }
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], jump_cond, lhs, rhs);
  }
  rep.vacuous = rep.trigger_hits == 0;
  return rep;
}

CheckReport check_vbar_monotone(const LyapunovState& V, const CheckContext& ctx, double delta,
                                double tol) {
  CheckReport rep;
  rep.variant = "vbar-monotone";
  rep.atol = tol;
  rep.rtol = 0.0;
  Prepared p = prepare(ctx);
  std::vector<double> v_all = values_over_samples(p.tab, V.V);
  std::vector<double> vb = detail::sliding_window_max(p.tab.tj, v_all, delta + 1.0);
  for (std::size_t k = 0; k + 1 < p.fwd.size(); ++k) {
    const std::size_t a = p.fwd[k], b = p.fwd[k + 1];
    ++rep.samples_checked;
    if (vb[b] > vb[a] + tol) rep.record(p.tab.t[b], p.tab.j[b], "vbar-nonincreasing", vb[b], vb[a]);
  }
  return rep;
}

CheckReport check_bound_eq16(const CheckContext& ctx, const LyapunovState& V, double mu,
                             double lambda1, const ComparisonFunction& alpha2, double delta,
                             double tol) {
  if (!(mu >= 1.0) || !(lambda1 > 0.0)) throw DomainError("eq16 needs mu >= 1, lambda1 > 0");
  CheckReport rep;
  rep.variant = "bound-eq16";
  rep.atol = tol;
  rep.rtol = tol;
  Prepared p = prepare(ctx);
  const double a2 = alpha2(phi0_norm(ctx));
  (void)delta;
  for (std::size_t i : p.fwd) {
    ++rep.samples_checked;
    const double lhs = V(*p.tab.x[i]);
    const double rhs =
        std::pow(mu, static_cast<double>(p.tab.j[i])) * std::exp(-lambda1 * p.tab.t[i]) * a2;
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], "eq16", lhs, rhs);
  }
  return rep;
}

CheckReport check_bound_eq21(const CheckContext& ctx, const LyapunovFunctional& V, double mu,
                             double lambda, const ComparisonFunction& alpha2, double delta,
                             double tol) {
  if (!(mu > 1.0)) throw DomainError("eq21 needs mu > 1");
  CheckReport rep;
  rep.variant = "bound-eq21";
  rep.atol = tol;
  rep.rtol = tol;
  Prepared p = prepare(ctx);
  std::vector<double> vf = functional_over_forward(ctx, p, V);
  const double a2 = alpha2(phi0_norm(ctx));
  for (std::size_t k = 0; k < p.fwd.size(); ++k) {
    const std::size_t i = p.fwd[k];
    ++rep.samples_checked;
    const double lhs = std::exp(lambda * p.tab.t[i]) * vf[k];
    const double rhs = std::pow(mu, static_cast<double>(p.tab.j[i])) * a2;
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], "eq21", lhs, rhs);
  }
  (void)delta;
  return rep;
}

CheckReport check_bound_eq31(const CheckContext& ctx, const LyapunovFunctional& V, double mu,
                             double lambda, const ComparisonFunction& alpha2, double delta,
                             double tol) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("eq31 needs mu in (0, 1)");
  CheckReport rep;
  rep.variant = "bound-eq31";
  rep.atol = tol;
  rep.rtol = tol;
  Prepared p = prepare(ctx);
  std::vector<double> vf = functional_over_forward(ctx, p, V);
  const double a2 = alpha2(phi0_norm(ctx));
  for (std::size_t k = 0; k < p.fwd.size(); ++k) {
    const std::size_t i = p.fwd[k];
    ++rep.samples_checked;
    const double lhs = vf[k];
    const double rhs = std::pow(mu, static_cast<double>(p.tab.j[i])) *
                       std::exp(lambda * p.tab.t[i]) * a2;
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], "eq31", lhs, rhs);
  }
  (void)delta;
  return rep;
}

CheckReport check_iss_envelope(const CheckContext& ctx, const KLLEnvelope& beta,
                               const ComparisonFunction& gamma, double tol) {
  CheckReport rep;
  rep.variant = "iss-envelope";
  rep.atol = tol;
  rep.rtol = tol;
  Prepared p = prepare(ctx);
  const double r0 = phi0_norm(ctx);
  double u_running = 0.0;
  for (std::size_t i : p.fwd) {
    ++rep.samples_checked;
    u_running = std::max(u_running, p.u_norm[i]);
    const double lhs = ctx.dist_w(*p.tab.x[i]);
    const double rhs = std::max(beta(r0, p.tab.t[i], static_cast<double>(p.tab.j[i])),
                                gamma.valid() ? gamma(u_running) : 0.0);
    if (!rep.within(lhs, rhs)) rep.record(p.tab.t[i], p.tab.j[i], "eq4", lhs, rhs);
  }
  return rep;
}

CheckReport check_constants(const CertificateSpec& spec, const HybridTimeDomain& dom,
                            double delta) {
  CheckReport rep;
  rep.variant = to_string(spec.variant) + "/constants";
  rep.atol = 0.0;
  rep.rtol = 0.0;
  auto merge = [&rep](const CheckReport& sub) {
    rep.samples_checked += sub.samples_checked;
    for (const auto& v : sub.violations) rep.violations.push_back(v);
  };
  const auto grid = log_grid(1e-6, 1e6, 121);
  switch (spec.variant) {
    case Variant::ThmA:
      merge(check_small_gain(spec.rho, grid));
      merge(check_small_gain(spec.gamma1, grid));
      break;
    case Variant::ThmB:
    case Variant::PropC:
    case Variant::PropD:
      merge(check_small_gain(spec.gamma1, grid));
      if (spec.persistence) merge(check_persistence(dom, *spec.persistence));
      break;
    case Variant::ThmE: {
      merge(check_small_gain(spec.gamma1, grid));
      const double m = adt_margin(spec.lambda1, spec.mu, spec.eps);
      ++rep.samples_checked;
      if (!(m > 0.0)) rep.record(0.0, 0, "E.3:adt", 0.0, m);
      merge(check_dwell_band(dom, spec.eps, spec.N0));
      break;
    }
    case Variant::ThmF: {
      merge(check_small_gain(spec.gamma1, grid));
      const double m = radt_margin(spec.lambda1, spec.mu, spec.eps);
      ++rep.samples_checked;
      if (!(m < 0.0)) rep.record(0.0, 0, "F.3:radt", m, 0.0);
      merge(check_dwell_band(dom, spec.eps, spec.N0));
      break;
    }
    case Variant::ThmG:
    case Variant::PropGflow:
    case Variant::PropGjump:
      if (spec.persistence) merge(check_persistence(dom, *spec.persistence));
      break;
    case Variant::ThmH: {
      const double lbar = solve_lambda_bar(spec.lambda1, spec.lambda2, delta);
      const double lam = spec.lambda_envelope.value_or(0.5 * lbar);
      ++rep.samples_checked;
      if (!(lam > 0.0 && lam < lbar)) rep.record(0.0, 0, "H.3:lambda-band", lam, lbar);
      const double m = lam * spec.eps - std::log(spec.mu);
      ++rep.samples_checked;
      if (!(m > 0.0)) rep.record(0.0, 0, "H.3:adt", 0.0, m);
      merge(check_dwell_band(dom, spec.eps, spec.N0));
      break;
    }
    case Variant::ThmI: {
      const double lam = lambda_thm7(spec.lambda1, spec.lambda2, spec.mu, spec.N0, delta);
      const double m = std::log(spec.mu) + spec.eps * lam;
      ++rep.samples_checked;
      if (!(m < 0.0)) rep.record(0.0, 0, "I.3:radt", m, 0.0);
      merge(check_dwell_band(dom, spec.eps, spec.N0));
      break;
    }
  }
  return rep;
}

std::vector<CheckReport> run_certificate(const CertificateSpec& spec, const CheckContext& ctx) {
  spec.validate();
  std::vector<CheckReport> out;
  out.push_back(check_sandwich(spec, ctx));
  if (is_razumikhin(spec.variant)) {
    out.push_back(check_razumikhin_flow(spec, ctx, spec.deriv_atol));
    out.push_back(check_razumikhin_jump(spec, ctx, spec.atol));
  } else {
    out.push_back(check_krasovskii(spec, ctx, spec.deriv_atol));
  }
  out.push_back(check_constants(spec, ctx.sol.x.domain(), ctx.delta));
  return out;
}

}  // namespace hymem
