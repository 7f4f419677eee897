#include "bregcd/prox.hpp"

#include <cmath>

#include "bregcd/errors.hpp"

namespace bregcd {

double bregman_prox_scalar(RefKind kind, double x, double g, double alpha, RegKind reg,
                           long index) {
  switch (kind) {
    case RefKind::SquaredEuclidean: {
      double u = x - alpha * g;
      return reg == RegKind::NonnegIndicator ? std::max(0.0, u) : u;
    }
    case RefKind::ShannonEntropy:
      // interior minimizer for either regularizer
      return x * std::exp(-alpha * g);
    case RefKind::BurgEntropy: {
      double den = 1.0 / x + alpha * g;
      if (!(den > 0.0)) {
        throw UnboundedSubproblemError("Burg prox subproblem unbounded below: 1/x + alpha*g <= 0",
                                       index);
      }
      return 1.0 / den;
    }
  }
  throw DomainError("unknown reference kind");
}

Eigen::VectorXd bregman_prox(RefKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                             double alpha, RegKind reg) {
  if (x.size() != g.size()) throw DimensionError("bregman_prox: size mismatch");
  if (!(alpha > 0.0)) throw DomainError("bregman_prox: alpha must be positive");
  require_domain(kind, x, "bregman_prox");
  Eigen::VectorXd u(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    u[j] = bregman_prox_scalar(kind, x[j], g[j], alpha, reg, j);
  }
  return u;
}

double prox_first_order_residual(RefKind kind, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& g, double alpha, RegKind reg,
                                 const Eigen::VectorXd& u) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (reg == RegKind::NonnegIndicator && u[j] == 0.0) {
      // active constraint: the stationarity value must be a valid normal,
      // i.e. g + (1/alpha)(h'(0) - h'(x)) >= 0
      double s = g[j] + (ref_grad(kind, 0.0) - ref_grad(kind, x[j])) / alpha;
      worst = std::max(worst, -s);
    } else {
      double s = g[j] + (ref_grad(kind, u[j]) - ref_grad(kind, x[j])) / alpha;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

}  // namespace bregcd
