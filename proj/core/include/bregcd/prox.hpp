#pragma once

#include <Eigen/Core>

#include "bregcd/reference.hpp"
#include "bregcd/regularizer.hpp"

namespace bregcd {

/// argmin_u  <g, u - x> + (1/alpha) D_h(u, x) + r(u), componentwise.
///
/// Closed forms:
///   SquaredEuclidean + Zero            u = x - alpha g
///   SquaredEuclidean + NonnegIndicator u = max(0, x - alpha g)
///   ShannonEntropy   (either r)        u = x exp(-alpha g)
///   BurgEntropy      (either r)        u = 1 / (1/x + alpha g)
///
/// The entropy minimizers are interior, so the nonnegativity indicator is
/// never active for them.  Burg requires 1/x_j + alpha g_j > 0; otherwise the
/// subproblem is unbounded below and UnboundedSubproblemError is thrown.
Eigen::VectorXd bregman_prox(RefKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                             double alpha, RegKind reg);

double bregman_prox_scalar(RefKind kind, double x, double g, double alpha, RegKind reg,
                           long index = -1);

/// Residual of the first-order condition g + (1/alpha)(grad h(u) - grad h(x)) + v = 0
/// with v in the subdifferential of r at u.  Zero (up to roundoff) certifies u
/// as the prox output.
double prox_first_order_residual(RefKind kind, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& g, double alpha, RegKind reg,
                                 const Eigen::VectorXd& u);

}  // namespace bregcd
