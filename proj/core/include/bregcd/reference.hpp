#pragma once

#include <Eigen/Core>

namespace bregcd {

/// Separable convex reference functions generating the Bregman geometry.
/// All three act coordinatewise, so multi-coordinate blocks decompose exactly.
enum class RefKind {
  SquaredEuclidean,  // h(t) = t^2/2          on R
  ShannonEntropy,    // h(t) = t log t        on (0, inf)
  BurgEntropy,       // h(t) = -log t         on (0, inf)
};

const char* ref_name(RefKind kind);

/// Catalog record: symmetry coefficient theta(h) = inf D_h(x,y)/D_h(y,x) and
/// the uniform scaling exponent of D_h under scaled translations.
struct ReferenceFunction {
  RefKind kind;
  double theta;          // SquaredEuclidean: 1, entropies: 0
  double gamma_uniform;  // SquaredEuclidean: 2, Shannon: 1, Burg: 0
  bool positive_domain;  // entropies live on the open positive orthant
};

ReferenceFunction make_reference(RefKind kind);

double ref_value(RefKind kind, double t);
double ref_grad(RefKind kind, double t);
double ref_curvature(RefKind kind, double t);

bool in_domain(RefKind kind, double t);
bool in_domain(RefKind kind, const Eigen::VectorXd& v);
/// Throws DomainError naming the first offending component.
void require_domain(RefKind kind, const Eigen::VectorXd& v, const char* what);

/// D_h(u, x) = h(u) - h(x) - <grad h(x), u - x>, componentwise sum.
double bregman_distance(RefKind kind, const Eigen::VectorXd& u, const Eigen::VectorXd& x);
double bregman_distance_scalar(RefKind kind, double u, double x);

/// D_h(u + theta (v - w), u) / D_h(v, w).  Throws DomainError if the
/// translated point leaves the domain; callers resample.
double translation_scaling_ratio(RefKind kind, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                 double theta);

/// D_h((1-theta) u + theta v, (1-theta) u + theta w) / D_h(v, w) for
/// theta in [0, 1]; the triangle-scaling form of the same exponent.
double triangle_scaling_ratio(RefKind kind, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                              double theta);

}  // namespace bregcd
