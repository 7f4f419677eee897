#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "bregcd/problem.hpp"
#include "bregcd/solvers.hpp"

namespace bregcd {

/// Outcome of one executable property check.  A check fails iff
/// max_violation > tolerance.
struct CheckReport {
  std::string name;
  long samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string oracle;  // provenance of the independent reference used
  std::string note;

  static CheckReport make(std::string name, long samples, double max_violation,
                          double tolerance, std::string oracle, std::string note = "");
};

std::string format_report_line(const CheckReport& r);
/// One record per check: name,samples,max_violation,tolerance,status.
void write_reports_csv(const std::vector<CheckReport>& reports, const std::string& path);
void write_reports_text(const std::vector<CheckReport>& reports, const std::string& path);

/// mu: relative strong-convexity constant of f w.r.t. H (in [0,1]);
/// sigma: strong-convexity modulus of H w.r.t. the Euclidean norm;
/// theta_min: smallest per-block symmetry coefficient.
struct StrongConvexityInfo {
  double mu = 0.0;
  double sigma = 0.0;
  double theta_min = 0.0;
};

/// Quadratic/Euclidean only: mu is the smallest eigenvalue of
/// diag(L)^{-1/2} Q diag(L)^{-1/2} clamped to [0,1], sigma = min_i L_i.
StrongConvexityInfo estimate_mu_sigma(const ProblemInstance& p);

// ---- geometry checks -------------------------------------------------------

/// Closed-form prox against the bisection oracle on random well-posed inputs,
/// both regularizer kinds, plus the first-order residual of the closed form.
CheckReport check_prox_oracle(RefKind kind, int samples, double tol, std::uint64_t seed);

/// D_h >= 0, D_h(x,x) = 0, and D_h(x,y) >= theta_cat * D_h(y,x) on sampled
/// pairs (SquaredEuclidean additionally: ratio exactly 1).
CheckReport check_symmetry_coefficient(RefKind kind, int samples, std::uint64_t seed);

/// phi(u) + D_h(u,x) >= phi(u+) + D_h(u+,x) + D_h(u,u+) for the prox output
/// u+ and random feasible u, with phi(u) = alpha <g,u> + alpha r(u).
CheckReport check_three_point(RefKind kind, int trials, std::uint64_t seed);

/// Asserts the triangle-scaling bound ratio <= theta^gamma on sampled
/// triples over a theta grid in (0,1].  For SquaredEuclidean the unrestricted
/// translation form is exercised as well (exact theta^2, theta in [-1,1]).
CheckReport check_triangle_scaling(RefKind kind, double gamma, int samples, double tol,
                                   std::uint64_t seed);

/// Empirical infimum of log(ratio)/log(theta) over sampled triples,
/// theta in (0,1).
double estimate_scaling_exponent(RefKind kind, int samples, std::uint64_t seed);

// ---- problem checks --------------------------------------------------------

/// Analytic gradients against central differences at random interior points.
/// `corrupt` shifts one gradient entry to prove the check can fail.
CheckReport check_gradient_fd(const ProblemInstance& p, int points, double tol, double step,
                              std::uint64_t seed, bool corrupt = false);

/// f(y) - f(x) - <grad_i f(x), y_i - x_i> <= l_scale * L_i * D_h(y_i, x_i)
/// on random one-block perturbations.
CheckReport check_descent_lemma(const ProblemInstance& p, int trials, double tol,
                                std::uint64_t seed, double l_scale = 1.0);

/// Along an instrumented run at stepsize (1+theta)/(2 l_scale L):
/// F(x) - F(x+) >= l_scale * L_i * D_h(x+_i, x_i) - tol at every step.
CheckReport check_sufficient_decrease(const ProblemInstance& p, int steps, double tol,
                                      std::uint64_t seed, double l_scale = 1.0);

/// Exact enumeration of the n one-step outcomes x ⊕_i T(x)_i at random
/// states: the expectation identity
///   E_i[D_H(u,x+)] = ((n-1)/n) D_H(u,x) + (1/n) D_H(u,T(x))
/// to 1e-9, the mean-value inequality with mu = 0, and
///   E_i[F(x+)] <= F(x) - (1/n) D_H(T(x),x).
CheckReport check_expectation_identities(const ProblemInstance& p, int states,
                                         std::uint64_t seed);

/// Cached A*x against fresh recomputation across random coordinate updates.
CheckReport check_residual_cache(const ProblemInstance& p, int updates, std::uint64_t seed);

/// relative_smoothness_residual over random positive samples plus
/// per-coordinate spike points (where the constants are near tight).
CheckReport check_relative_smoothness(const ProblemInstance& p, int samples, double tol,
                                      std::uint64_t seed, double l_scale = 1.0);

/// Drives a run to a stationary point and checks the first-order certificate:
/// stationarity <= 1e-12 implies |grad f(x) + v|_inf <= 1e-5 for the prox
/// subgradient v.
CheckReport check_stationarity_certificate(const ProblemInstance& p, std::uint64_t seed);

// ---- rate-bound checks -----------------------------------------------------

enum class RateBound {
  ConvexSublinear,       // mean F(x^k) - F* <= slack * n/(n+k) * (F0 - F* + D_H(x*,x0))
  StronglyConvexLinear,  // ... <= slack * (1 - (1+theta)mu/(n(1+theta mu)))^k * (...)
  NonconvexStationarity, // mean min_{l<=k} gap_l <= slack * n F0 / (k+1)  (F* >= 0)
  Accelerated,           // mean f(x^k) - f* <= slack * (n gamma/(k-1+gamma))^gamma * D_H(x*,x0)
};

struct RateCheckInputs {
  std::vector<SolverTrace> traces;  // >= 20 seeds of the same instance
  double f_star = 0.0;              // reference optimum (long-run or eigen-solved)
  Eigen::VectorXd x_star;           // reference minimizer
  double slack = 1.5;
  double gamma = 2.0;  // Accelerated only
};

/// Envelopes are enforced at every logged k.  For the linear rate the
/// comparison stops once the envelope falls below the floating-point
/// resolution of the objective values involved (the bound is vacuous in
/// doubles there).
CheckReport check_rate_bound(const ProblemInstance& p, RateBound kind,
                             const RateCheckInputs& inputs,
                             std::optional<StrongConvexityInfo> info = std::nullopt);

// ---- suites ----------------------------------------------------------------

/// The default property suite at desk scale (no rate envelopes).
std::vector<CheckReport> run_property_suite(std::uint64_t seed);

/// Rate-envelope suite for one family (20-seed averages).
std::vector<CheckReport> run_rate_suite(Family family, int seeds, int m, int n, int epochs,
                                        std::uint64_t seed);

}  // namespace bregcd
