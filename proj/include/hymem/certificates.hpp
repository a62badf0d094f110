#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hymem/lyapunov.hpp"
#include "hymem/report.hpp"
#include "hymem/system_core.hpp"

namespace hymem {

enum class Variant {
  ThmA,       // A.1-A.4: small gain, strict flow and jump decrease
  ThmB,       // B.1-B.2: decrease measured by rho(|.|_W)
  PropC,      // C.1 + B.2: neutral flow, persistent condition
  PropD,      // B.1 + D.1: non-increasing jumps, persistence
  ThmE,       // E.1-E.3: stable flow, expanding jumps, dwell band
  ThmF,       // F.1-F.3: unstable flow, contracting jumps, reverse dwell
  ThmG,       // G.1-G.3: Krasovskii strict decrease
  PropGflow,  // relaxed flow: D+V <= 0, strict jump decrease
  PropGjump,  // relaxed jumps: V(phi+) <= V(phi), strict flow decrease
  ThmH,       // H.1-H.3: Krasovskii stable flow with V-hat coupling
  ThmI        // I.1-I.3: Krasovskii unstable flow, contracting jumps
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);
bool is_razumikhin(Variant v);

/// A Lyapunov candidate plus comparison functions and constants, tagged with
/// the theorem variant it claims. Only the fields the variant demands may be
/// set; validate() enforces the schema.
struct CertificateSpec {
  Variant variant = Variant::ThmA;
  LyapunovState V_state;       // Razumikhin variants
  LyapunovFunctional V_func;   // Krasovskii variants
  ComparisonFunction alpha1, alpha2;  // class K-infinity sandwich
  ComparisonFunction alpha3;          // PD (or K-infinity) decrease rate
  ComparisonFunction rho;             // jump gain (Razumikhin) / input trigger (Krasovskii)
  ComparisonFunction gamma1, gamma2;  // Razumikhin trigger gains
  // Structured state-based bounds; when set they replace alpha1/alpha2/rho in
  // the sandwich and flow-decrease checks (used by the worked examples whose
  // bounds are written directly in the state components).
  std::function<double(const State&)> lower_bound_fn, upper_bound_fn, flow_decrease_fn;
  double lambda1 = 0.0, lambda2 = 0.0, mu = 0.0, eps = 0.0;
  long N0 = 0;
  double varpi = 1.0;
  std::optional<PersistenceSpec> persistence;
  std::optional<double> lambda_envelope;  // lambda used by the Eq-(21)/(31) envelopes

  double atol = 1e-6, rtol = 1e-6;
  double deriv_atol = 1e-3;  // absorbs finite-difference error in derivative checks

  void validate() const;  // throws SchemaError
};

/// Everything the trajectory checkers need besides the spec.
struct CheckContext {
  const Solution& sol;
  std::function<double(const State&)> dist_w;
  double delta = 0.0;
};

/// Parametric class-KLL envelope: beta(r, t, j) = scale * r * e^{-rate t} * jump_factor^j.
struct KLLEnvelope {
  double scale = 1.0;
  double rate = 0.0;
  double jump_factor = 1.0;
  double operator()(double r, double t, double j) const;
};

CheckReport check_sandwich(const CertificateSpec& spec, const CheckContext& ctx);
CheckReport check_razumikhin_flow(const CertificateSpec& spec, const CheckContext& ctx, double tol);
CheckReport check_razumikhin_jump(const CertificateSpec& spec, const CheckContext& ctx, double tol);
CheckReport check_krasovskii(const CertificateSpec& spec, const CheckContext& ctx, double tol);
CheckReport check_vbar_monotone(const LyapunovState& V, const CheckContext& ctx, double delta,
                                double tol);
CheckReport check_bound_eq16(const CheckContext& ctx, const LyapunovState& V, double mu,
                             double lambda1, const ComparisonFunction& alpha2, double delta,
                             double tol);
CheckReport check_bound_eq21(const CheckContext& ctx, const LyapunovFunctional& V, double mu,
                             double lambda, const ComparisonFunction& alpha2, double delta,
                             double tol);
CheckReport check_bound_eq31(const CheckContext& ctx, const LyapunovFunctional& V, double mu,
                             double lambda, const ComparisonFunction& alpha2, double delta,
                             double tol);
CheckReport check_iss_envelope(const CheckContext& ctx, const KLLEnvelope& beta,
                               const ComparisonFunction& gamma, double tol);
/// Scalar-condition aggregate for the variant (dwell margins, lambda bands,
/// small gain), evaluated against the solution's domain.
CheckReport check_constants(const CertificateSpec& spec, const HybridTimeDomain& dom, double delta);

/// Runs the checks a variant demands and returns them in a fixed order.
std::vector<CheckReport> run_certificate(const CertificateSpec& spec, const CheckContext& ctx);

namespace detail {

/// All samples of an arc flattened in hybrid-time order.
struct SampleTable {
  std::vector<double> t;
  std::vector<long> j;
  std::vector<double> tj;
  std::vector<const State*> x;
  std::vector<const State*> f;     // null where no derivative is stored
  std::vector<char> forward;       // t >= 0 and j >= 0
  std::vector<char> flow_sample;   // lies on a positive-length segment
  std::vector<char> pre_jump;      // last sample of a segment with a successor
  std::vector<double> room_ahead;  // segment t_hi - t
};

SampleTable build_table(const HybridArc& arc);

/// Running max of val over the trailing window tj in [tj_i - width, tj_i],
/// optionally restricted to entries with mask != 0.
std::vector<double> sliding_window_max(const std::vector<double>& tj,
                                       const std::vector<double>& val, double width,
                                       const std::vector<char>* mask = nullptr);

}  // namespace detail

}  // namespace hymem
