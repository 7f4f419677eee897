#pragma once

#include <string>

#include "bregcd/problem.hpp"

namespace bregcd {

/// Plain-text instance format: header line "M N", M rows of N space-separated
/// decimals for A, then one row of M decimals for b.  Values are written with
/// 17 significant digits so load(save(p)) reproduces the doubles exactly.
void save_instance(const ProblemInstance& p, const std::string& path);

/// The file stores only (A, b); the family supplies reference kinds,
/// smoothness constants and the regularizer.
ProblemInstance load_instance(Family family, const std::string& path,
                              RegKind reg = RegKind::NonnegIndicator);

}  // namespace bregcd
