#include "bregcd/oracles.hpp"

#include <cmath>

#include "bregcd/errors.hpp"

namespace bregcd {

namespace {

// Derivative of the 1-D subproblem t -> g t + (1/alpha) D_h(t, x); strictly
// increasing in t because h is strictly convex.
double subproblem_slope(RefKind kind, double x, double g, double alpha, double t) {
  return g + (ref_grad(kind, t) - ref_grad(kind, x)) / alpha;
}

double solve_scalar(RefKind kind, double x, double g, double alpha, RegKind reg, double tol,
                    long index) {
  const bool positive = kind != RefKind::SquaredEuclidean;

  // Nonnegativity can only bind where h'(0) is finite; the entropy slopes
  // fall to -inf at 0, so their minimizers are interior.
  if (!positive && reg == RegKind::NonnegIndicator) {
    if (subproblem_slope(kind, x, g, alpha, 0.0) >= 0.0) return 0.0;
  }

  double lo, hi;
  if (positive) {
    lo = x;
    while (subproblem_slope(kind, x, g, alpha, lo) > 0.0) {
      lo *= 0.5;
      if (lo < 1e-300) {
        throw UnboundedSubproblemError("prox oracle: no lower bracket inside the domain", index);
      }
    }
    hi = x;
    int doublings = 0;
    while (subproblem_slope(kind, x, g, alpha, hi) < 0.0) {
      hi *= 2.0;
      if (++doublings > 2000) {
        throw UnboundedSubproblemError("prox oracle: slope never turns positive", index);
      }
    }
  } else {
    double width = 1.0;
    lo = x - width;
    while (subproblem_slope(kind, x, g, alpha, lo) > 0.0) {
      width *= 2.0;
      lo = x - width;
      if (!std::isfinite(lo)) {
        throw UnboundedSubproblemError("prox oracle: no lower bracket", index);
      }
    }
    width = 1.0;
    hi = x + width;
    while (subproblem_slope(kind, x, g, alpha, hi) < 0.0) {
      width *= 2.0;
      hi = x + width;
      if (!std::isfinite(hi)) {
        throw UnboundedSubproblemError("prox oracle: no upper bracket", index);
      }
    }
    if (reg == RegKind::NonnegIndicator) lo = std::max(lo, 0.0);
  }

  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (subproblem_slope(kind, x, g, alpha, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Eigen::VectorXd bregman_prox_numeric(RefKind kind, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& g, double alpha, RegKind reg,
                                     double tol) {
  if (x.size() != g.size()) throw DimensionError("bregman_prox_numeric: size mismatch");
  require_domain(kind, x, "bregman_prox_numeric");
  Eigen::VectorXd u(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    u[j] = solve_scalar(kind, x[j], g[j], alpha, reg, tol, j);
  }
  return u;
}

Eigen::VectorXd fd_gradient(const ProblemInstance& p, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(p.dim());
  Eigen::VectorXd probe = x;
  for (int j = 0; j < p.dim(); ++j) {
    probe[j] = x[j] + h;
    double fp = objective(p, probe);
    probe[j] = x[j] - h;
    double fm = objective(p, probe);
    probe[j] = x[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double fd_second_derivative(const ProblemInstance& p, const Eigen::VectorXd& x, int j, double h) {
  Eigen::VectorXd probe = x;
  double f0 = objective(p, probe);
  probe[j] = x[j] + h;
  double fp = objective(p, probe);
  probe[j] = x[j] - h;
  double fm = objective(p, probe);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

Eigen::VectorXd prox_map_numeric(const ProblemInstance& p, const Eigen::VectorXd& x, double tol) {
  Eigen::VectorXd g = full_gradient(p, x);
  Eigen::VectorXd t(p.dim());
  for (int i = 0; i < p.blocks(); ++i) {
    p.partition.segment(t, i) = bregman_prox_numeric(
        p.reference.kind(i), p.partition.segment(x, i), p.partition.segment(g, i),
        1.0 / p.reference.weight(i), p.regularizer.block(i), tol);
  }
  return t;
}

}  // namespace bregcd
