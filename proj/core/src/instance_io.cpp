#include "bregcd/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bregcd/errors.hpp"

namespace bregcd {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void save_instance(const ProblemInstance& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  const int m = p.rows(), n = p.dim();
  out << m << ' ' << n << '\n';
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << fmt17(p.A(i, j));
    }
    out << '\n';
  }
  for (Eigen::Index i = 0; i < p.b.size(); ++i) {
    if (i) out << ' ';
    out << fmt17(p.b[i]);
  }
  out << '\n';
  if (!out) throw IoError("write failed: " + path);
}

ProblemInstance load_instance(Family family, const std::string& path, RegKind reg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  int m = 0, n = 0;
  if (!(in >> m >> n) || m < 1 || n < 1) throw IoError("bad header in " + path);
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> A(i, j))) throw IoError("truncated matrix in " + path);
    }
  }
  const int blen = family == Family::Quadratic ? n : m;
  Eigen::VectorXd b(blen);
  for (int i = 0; i < blen; ++i) {
    if (!(in >> b[i])) throw IoError("truncated b row in " + path);
  }
  return make_instance(family, std::move(A), std::move(b), reg);
}

}  // namespace bregcd
