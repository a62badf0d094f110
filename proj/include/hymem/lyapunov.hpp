#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hymem/report.hpp"
#include "hymem/system_core.hpp"

namespace hymem {

enum class FnClass { K, Kinf, PD, nondecreasing };

std::string to_string(FnClass c);

/// A scalar comparison function together with its declared class.
struct ComparisonFunction {
  std::function<double(double)> f;
  FnClass declared = FnClass::K;
  std::string form;  // printable description, e.g. "linear(0.5)"

  double operator()(double v) const { return f(v); }
  bool valid() const { return static_cast<bool>(f); }

  static ComparisonFunction linear(double k, FnClass c = FnClass::Kinf);
  static ComparisonFunction power(double p, double k, FnClass c = FnClass::Kinf);
  static ComparisonFunction saturating();  // v / (1 + v), class K
  static ComparisonFunction zero();
  /// Piecewise-linear monotone interpolation of (v, f(v)) points.
  static ComparisonFunction table(std::vector<std::pair<double, double>> points,
                                  FnClass c = FnClass::K);
};

/// Lyapunov candidate on states (Razumikhin route, Theorems with conditions
/// A through F).
struct LyapunovState {
  std::function<double(const State&)> V;
  double operator()(const State& x) const { return V(x); }
};

/// Lyapunov candidate on memory arcs (Krasovskii route, conditions G-I).
struct LyapunovFunctional {
  std::function<double(const MemoryArc&)> V;
  double operator()(const MemoryArc& phi) const { return V(phi); }
};

struct PersistenceSpec {
  ComparisonFunction gamma_delta;  // class K-infinity
  double N_delta = 1.0;            // > 0
  enum class Target { flow, jump } target = Target::jump;
};

/// Grid-based class-membership validation: certifies "not falsified on grid".
CheckReport validate_class(const ComparisonFunction& fn, const std::vector<double>& grid,
                           double unbounded_threshold = 1e6);

/// Default grid for scalar condition checks: n log-spaced points over [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

/// Clarke-derivative surrogate: max over h in {1e-4, 1e-5, 1e-6} of the
/// forward difference quotient of V at x in direction f.
double directional_deriv(const LyapunovState& V, const State& x, const State& f);

/// Upper Dini derivative surrogate along the stored solution: max over
/// h in {1e-3, 1e-4} of [V(A^D_{[t+h,j]}x) - V(A^D_{[t,j]}x)] / h.
double dini_functional_deriv(const LyapunovFunctional& V, const Solution& sol, double t, long j,
                             double delta);

/// V-bar: sup of V over the samples of phi with s + k >= -Delta - 1.
double vbar(const LyapunovState& V, const MemoryArc& phi, double delta);

/// V-hat: sup of V over memory windows at offsets (t+s, j+k), s+k in
/// [-Delta-1, 0], restricted to dom_{>=0} x; equals V(A^D_{[t,j]}x) when no
/// other offset lies in the forward domain.
double vhat(const LyapunovFunctional& V, const Solution& sol, double t, long j, double delta);

/// rho(v) < v and gamma(v) < v on a positive grid (small gain condition).
CheckReport check_small_gain(const ComparisonFunction& fn, const std::vector<double>& grid);

/// j in [t/eps - N0, t/eps + N0] for every forward sample of the domain.
CheckReport check_dwell_band(const HybridTimeDomain& d, double eps, long n0);

/// lambda1 * eps - ln(mu); the average dwell-time like condition holds iff > 0.
double adt_margin(double lambda1, double mu, double eps);

/// lambda1 * eps + ln(mu); the reverse condition holds iff < 0.
double radt_margin(double lambda1, double mu, double eps);

/// Unique positive root of Gamma(l) = l - lambda1 + lambda2 * e^{l (Delta+1)},
/// by bisection on [0, lambda1]; |Gamma(root)| <= 1e-10.
double solve_lambda_bar(double lambda1, double lambda2, double delta);

/// lambda = lambda1 + lambda2 * mu^{-N0} * e^{Delta + 1}.
double lambda_thm7(double lambda1, double lambda2, double mu, long n0, double delta);

/// Persistent flow (t > gamma(t+j) - N) or persistent jumps (j > ...) over
/// every forward sample of the domain.
CheckReport check_persistence(const HybridTimeDomain& d, const PersistenceSpec& spec);

namespace detail {
/// Generic root bracketing + bisection used by the lambda-bar style solves.
std::optional<double> bisect_root(const std::function<double(double)>& g, double lo, double hi,
                                  double residual_tol, int max_iter = 200);
}  // namespace detail

}  // namespace hymem
