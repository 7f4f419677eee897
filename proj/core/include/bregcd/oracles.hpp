#pragma once

#include <Eigen/Core>

#include "bregcd/problem.hpp"
#include "bregcd/prox.hpp"

namespace bregcd {

/// Independent numeric oracles.  None of these share code with the closed
/// forms they validate.

/// Solves each separable 1-D prox subproblem by bracketing the stationarity
/// condition and bisecting to absolute tolerance `tol` (1e-10 default).
/// Throws UnboundedSubproblemError when no bracket exists inside the domain.
Eigen::VectorXd bregman_prox_numeric(RefKind kind, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& g, double alpha, RegKind reg,
                                     double tol = 1e-10);

/// Central-difference gradient of the smooth part, step h per coordinate.
Eigen::VectorXd fd_gradient(const ProblemInstance& p, const Eigen::VectorXd& x, double h);

/// Second central difference of f along coordinate j.
double fd_second_derivative(const ProblemInstance& p, const Eigen::VectorXd& x, int j, double h);

/// Numeric counterpart of prox_map built on bregman_prox_numeric.
Eigen::VectorXd prox_map_numeric(const ProblemInstance& p, const Eigen::VectorXd& x,
                                 double tol = 1e-10);

}  // namespace bregcd
