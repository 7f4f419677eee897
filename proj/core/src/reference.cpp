#include "bregcd/reference.hpp"

#include <cmath>

#include "bregcd/errors.hpp"

namespace bregcd {

const char* ref_name(RefKind kind) {
  switch (kind) {
    case RefKind::SquaredEuclidean: return "euclidean";
    case RefKind::ShannonEntropy: return "shannon";
    case RefKind::BurgEntropy: return "burg";
  }
  return "?";
}

ReferenceFunction make_reference(RefKind kind) {
  switch (kind) {
    case RefKind::SquaredEuclidean: return {kind, 1.0, 2.0, false};
    case RefKind::ShannonEntropy: return {kind, 0.0, 1.0, true};
    case RefKind::BurgEntropy: return {kind, 0.0, 0.0, true};
  }
  throw DomainError("unknown reference kind");
}

double ref_value(RefKind kind, double t) {
  switch (kind) {
    case RefKind::SquaredEuclidean: return 0.5 * t * t;
    case RefKind::ShannonEntropy: return t * std::log(t);
    case RefKind::BurgEntropy: return -std::log(t);
  }
  return 0.0;
}

double ref_grad(RefKind kind, double t) {
  switch (kind) {
    case RefKind::SquaredEuclidean: return t;
    case RefKind::ShannonEntropy: return std::log(t) + 1.0;
    case RefKind::BurgEntropy: return -1.0 / t;
  }
  return 0.0;
}

double ref_curvature(RefKind kind, double t) {
  switch (kind) {
    case RefKind::SquaredEuclidean: return 1.0;
    case RefKind::ShannonEntropy: return 1.0 / t;
    case RefKind::BurgEntropy: return 1.0 / (t * t);
  }
  return 0.0;
}

bool in_domain(RefKind kind, double t) {
  if (!std::isfinite(t)) return false;
  return kind == RefKind::SquaredEuclidean || t > 0.0;
}

bool in_domain(RefKind kind, const Eigen::VectorXd& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!in_domain(kind, v[j])) return false;
  }
  return true;
}

void require_domain(RefKind kind, const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!in_domain(kind, v[j])) {
      throw DomainError(std::string(what) + ": point outside the domain of " + ref_name(kind),
                        j);
    }
  }
}

namespace {

// D_h per component, written out so the common cases avoid cancellation in
// h(u) - h(x) - h'(x)(u - x).
double distance_scalar_unchecked(RefKind kind, double u, double x) {
  switch (kind) {
    case RefKind::SquaredEuclidean: {
      double d = u - x;
      return 0.5 * d * d;
    }
    case RefKind::ShannonEntropy:
      return u * std::log(u / x) - u + x;
    case RefKind::BurgEntropy:
      return -std::log(u / x) + u / x - 1.0;
  }
  return 0.0;
}

}  // namespace

double bregman_distance_scalar(RefKind kind, double u, double x) {
  if (!in_domain(kind, u)) throw DomainError("bregman_distance: first argument out of domain");
  if (!in_domain(kind, x)) throw DomainError("bregman_distance: second argument out of domain");
  return distance_scalar_unchecked(kind, u, x);
}

double bregman_distance(RefKind kind, const Eigen::VectorXd& u, const Eigen::VectorXd& x) {
  if (u.size() != x.size()) throw DimensionError("bregman_distance: size mismatch");
  require_domain(kind, u, "bregman_distance(u, .)");
  require_domain(kind, x, "bregman_distance(., x)");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    sum += distance_scalar_unchecked(kind, u[j], x[j]);
  }
  return sum;
}

double translation_scaling_ratio(RefKind kind, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                 double theta) {
  Eigen::VectorXd p = u + theta * (v - w);
  require_domain(kind, p, "translation_scaling_ratio: translated point");
  double den = bregman_distance(kind, v, w);
  if (den <= 0.0) throw DomainError("translation_scaling_ratio: v == w");
  return bregman_distance(kind, p, u) / den;
}

double triangle_scaling_ratio(RefKind kind, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                              double theta) {
  Eigen::VectorXd a = (1.0 - theta) * u + theta * v;
  Eigen::VectorXd b = (1.0 - theta) * u + theta * w;
  require_domain(kind, a, "triangle_scaling_ratio: first mixture");
  require_domain(kind, b, "triangle_scaling_ratio: second mixture");
  double den = bregman_distance(kind, v, w);
  if (den <= 0.0) throw DomainError("triangle_scaling_ratio: v == w");
  return bregman_distance(kind, a, b) / den;
}

}  // namespace bregcd
