#pragma once
#include <cstdint>
#include <vector>

#include "hymem/certificates.hpp"
#include "hymem/system_core.hpp"

namespace hymem {

// ---------------------------------------------------------------------------
// Example 1: networked control loop with a constant plant delay. State layout
// (x, e, s, tau, l): plant state, network error, stored correction, timer, and
// the logic flag selecting the transmit / in-flight phase.
// ---------------------------------------------------------------------------

struct Example1Params {
  double r = 0.02;         // constant delay (s)
  double eps = 0.01;       // minimum transmit spacing
  double tau_mati = 0.04;  // max transmission interval
  double tau_mad = 0.02;   // max arrival delay
};

constexpr double kTauBar = 0.04125;

/// Dense solution table of one timer weight ODE d(phi)/dt = -a phi - b phi^2 - c.
class TimerWeight {
 public:
  TimerWeight(double a, double b, double c, double phi_at_0, double tau_max, double step = 1e-5);
  double value(double tau) const;  // Hermite interpolation on the table
  double tau_max() const { return tau_max_; }

 private:
  std::vector<double> v_, d_;
  double step_ = 1e-5;
  double tau_max_ = 0.0;
};

/// Timer weight phi_l(tau) for l in {0, 1}; DomainError outside [0, tau_mati].
double example1_phi(int l, double tau, const Example1Params& p);

struct Example1Build {
  Example1Params params;
  double delta = 0.0;  // r + r/eps + 1
  SystemDef sys;
  CertificateSpec cert;
  SimConfig sim;
  // Numeric audit of the example's stated side conditions (reported, never assumed).
  bool phi0_geq_half_phi1_at_zero = false;  // phi_0(tau) >= 0.5 phi_1(0) on [0, tau_mati]
  bool phi1_geq_phi0_on_mad = false;        // phi_1(tau) >= phi_0(tau) on [0, tau_mad]
  double tau_bar_computed = 0.0;            // where phi_1 reaches 0.5
};

Example1Build build_example1(const Example1Params& p);

/// Seeded random initial memory arc for Example 1: a structurally valid
/// transmit/arrive history is synthesized, pushed through the real dynamics
/// for a few cycles, windowed by the memory operator, and scaled so the
/// W-distance sup norm lands in (0, 1].
MemoryArc example1_initial_arc(const Example1Build& ex, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Example 2: impulsive switched linear time-delay system. State layout
// (x[0..n-1], p, tau): plant state, mode index, impulse timer.
// ---------------------------------------------------------------------------

struct Example2Params {
  std::vector<Eigen::MatrixXd> A, B, C, D;  // per-mode matrices
  std::vector<double> sigma, mu;            // LKF constants per mode
  double eta = 0.0;
  double r = 0.1;            // state delay (s)
  double delta_impulse = 1;  // impulse period
  double varpi = 1.0;        // Case-1 trigger scale
  double memory_delta = 0.0; // Delta of the hybrid system; defaulted when 0

  int n() const { return A.empty() ? 0 : static_cast<int>(A[0].rows()); }
  int m() const { return C.empty() ? 0 : static_cast<int>(C[0].cols()); }
  int modes() const { return static_cast<int>(A.size()); }
  double default_delta() const;
};

enum class Example2Case { Case1, Case2, Case3, Unclassified };
std::string to_string(Example2Case c);

struct Example2Classification {
  std::vector<double> Lambda, Omega, lambda2_max_D;
  Example2Case case_id = Example2Case::Unclassified;
  std::vector<double> lambda_bar;  // per-mode envelope-rate roots (Case 2/3; NaN if none)
};

SystemDef build_example2(const Example2Params& p);
Example2Classification classify_example2(const Example2Params& p, double eps_trigger);

/// sigma_p |psi(0,0)|^2 + mu_p * integral_{-r}^{0} e^{-eta tau(s,k(s))} |psi(s,k(s))|^2 ds,
/// evaluated by the trapezoid rule over the history grid.
LyapunovFunctional example2_lkf(const Example2Params& p);

/// Constant-history initial arc (x = x0, mode p0, timer 0) of depth inside
/// [memory_delta, memory_delta + 1].
MemoryArc example2_initial_arc(const Example2Params& p, const State& x0, int p0 = 0);

struct Example2Build {
  Example2Params params;
  Example2Classification classification;
  SystemDef sys;
  CertificateSpec cert;
  SimConfig sim;
  LyapunovFunctional lkf;
  KLLEnvelope iss_beta;          // Case-1 envelope
  ComparisonFunction iss_gamma;  // Case-1 input gain
  double lambda_bar_cert = 0.0;  // solve_lambda_bar root for the ThmH instance
};

/// Shipped scalar instances for the three cases (1, 2, 3).
Example2Build build_example2_case(int case_id);

}  // namespace hymem
