#pragma once

// Constant-curvature models as quadratic forms on R^{n+1}, reflections, and
// realization of Coxeter simplices and polytopes.
//
// Spherical S^n:  points are unit vectors, form J = I.
// Hyperbolic L^n: points lie on the upper sheet of <x,x> = -1 with
//                 J = diag(1, ..., 1, -1).
// Euclidean E^n:  points are homogeneous (x, 1); a facet normal is an affine
//                 covector (a, b) with |a| = 1, pairing a.x + b.
// In every model a chamber is the intersection of the half-spaces
// pair(u_i, p) >= 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxroll/error.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

enum class SpaceKind { Spherical, Euclidean, Hyperbolic };

inline std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Spherical: return "spherical";
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

inline double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

struct SpaceModel {
  SpaceKind kind = SpaceKind::Spherical;
  int dim = 0;

  int ambient() const { return dim + 1; }

  /// Ambient form on points; the Euclidean entry is degenerate in the
  /// homogeneous coordinate.
  Eigen::MatrixXd form() const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(ambient(), ambient());
    if (kind == SpaceKind::Hyperbolic) j(dim, dim) = -1.0;
    if (kind == SpaceKind::Euclidean) j(dim, dim) = 0.0;
    return j;
  }

  /// Inner product of two facet normals (linear parts only in E^n).
  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    switch (kind) {
      case SpaceKind::Spherical: return u.dot(v);
      case SpaceKind::Hyperbolic: return u.head(dim).dot(v.head(dim)) - u[dim] * v[dim];
      case SpaceKind::Euclidean: return u.head(dim).dot(v.head(dim));
    }
    return 0.0;
  }

  /// Value of the facet functional u at point p; zero on the facet hyperplane.
  double pair(const Eigen::VectorXd& u, const Eigen::VectorXd& p) const {
    if (kind == SpaceKind::Hyperbolic) return u.head(dim).dot(p.head(dim)) - u[dim] * p[dim];
    return u.dot(p);
  }

  /// Point form (S^n and L^n only).
  double point_inner(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
    if (kind == SpaceKind::Hyperbolic) return p.head(dim).dot(q.head(dim)) - p[dim] * q[dim];
    return p.dot(q);
  }

  double distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const {
    switch (kind) {
      case SpaceKind::Spherical: return std::acos(clamp_unit(p.dot(q)));
      case SpaceKind::Hyperbolic: return std::acosh(std::max(1.0, -point_inner(p, q)));
      case SpaceKind::Euclidean: return (p.head(dim) / p[dim] - q.head(dim) / q[dim]).norm();
    }
    return 0.0;
  }

  Eigen::VectorXd normalize_normal(const Eigen::VectorXd& u) const {
    double n2 = inner(u, u);
    if (n2 <= 1e-24) throw DomainError("normal is not spacelike");
    return u / std::sqrt(n2);
  }

  Eigen::VectorXd normalize_point(const Eigen::VectorXd& p) const {
    switch (kind) {
      case SpaceKind::Spherical: return p.normalized();
      case SpaceKind::Hyperbolic: {
        double n2 = -point_inner(p, p);
        if (n2 <= 0) throw DomainError("point is not timelike");
        Eigen::VectorXd q = p / std::sqrt(n2);
        return q[dim] < 0 ? Eigen::VectorXd(-q) : q;
      }
      case SpaceKind::Euclidean: return p / p[dim];
    }
    return p;
  }
};

struct Isometry {
  Eigen::MatrixXd matrix;

  static Isometry identity(const SpaceModel& s) {
    return {Eigen::MatrixXd::Identity(s.ambient(), s.ambient())};
  }

  Isometry operator*(const Isometry& o) const { return {matrix * o.matrix}; }
  Isometry inverse() const { return {matrix.inverse()}; }

  Eigen::VectorXd point(const Eigen::VectorXd& p) const { return matrix * p; }

  /// Normals are vectors in S^n and L^n but covectors in E^n.
  Eigen::VectorXd normal(const SpaceModel& s, const Eigen::VectorXd& u) const {
    if (s.kind == SpaceKind::Euclidean) return matrix.transpose().partialPivLu().solve(u);
    return matrix * u;
  }

  bool preserves_form(const SpaceModel& s, double tol = 1e-9) const {
    const int d = s.dim;
    if (s.kind == SpaceKind::Euclidean) {
      Eigen::MatrixXd lin = matrix.topLeftCorner(d, d);
      if ((lin.transpose() * lin - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > tol) return false;
      if (matrix.row(d).head(d).cwiseAbs().maxCoeff() > tol) return false;
      return std::abs(matrix(d, d) - 1.0) <= tol;
    }
    Eigen::MatrixXd j = s.form();
    if ((matrix.transpose() * j * matrix - j).cwiseAbs().maxCoeff() > tol) return false;
    // Time orientation: the upper sheet maps to itself.
    return s.kind != SpaceKind::Hyperbolic || matrix(d, d) > 0;
  }
};

/// Reflection in the hyperplane of a unit normal: x -> x - 2<x,u>u.
inline Isometry reflection(const SpaceModel& s, const Eigen::VectorXd& u) {
  if (u.size() != s.ambient()) throw DomainError("normal has the wrong dimension");
  if (std::abs(s.inner(u, u) - 1.0) > 1e-9) throw DomainError("reflection requires a unit normal");
  const int n = s.ambient();
  Eigen::VectorXd raised = u;      // vector with <raised, p> = pair(u, p)
  Eigen::VectorXd lowered = u;     // covector of the functional
  if (s.kind == SpaceKind::Hyperbolic) lowered[s.dim] = -u[s.dim];
  if (s.kind == SpaceKind::Euclidean) raised[s.dim] = 0.0;
  return {Eigen::MatrixXd::Identity(n, n) - 2.0 * raised * lowered.transpose()};
}

/// Dihedral angle of the wedge pair(u, .) >= 0, pair(v, .) >= 0.
inline double dihedral_angle(const SpaceModel& s, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  double c = s.inner(u, v);
  if (s.kind == SpaceKind::Hyperbolic && std::abs(c) >= 1.0) throw Ultraparallel("hyperplanes do not intersect");
  return std::acos(clamp_unit(-c));
}

/// A convex Coxeter polytope: inward unit normals, vertices, incidences and
/// the dihedral labels (kInfinity for facets that do not meet along a face).
struct GeometricChamber {
  SpaceModel space;
  std::vector<Eigen::VectorXd> normals;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<std::vector<int>> vertex_facets;  // sorted
  CoxeterMatrix labels;
  bool compact = true;

  int facet_count() const { return static_cast<int>(normals.size()); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }

  bool adjacent(int f, int g) const { return f != g && !is_infinite_label(labels.label(f, g)); }

  bool incident(int v, int f) const {
    const auto& fs = vertex_facets[static_cast<size_t>(v)];
    return std::binary_search(fs.begin(), fs.end(), f);
  }

  std::vector<int> facet_vertices(int f) const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
      if (incident(v, f)) out.push_back(v);
    return out;
  }

  std::vector<int> hyperedge_vertices(int f, int g) const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
      if (incident(v, f) && incident(v, g)) out.push_back(v);
    return out;
  }

  /// Vertices of facet f in cyclic order, consecutive ones joined by an edge.
  /// Only defined for 2- and 3-dimensional chambers.
  std::vector<int> facet_cycle(int f) const {
    std::vector<int> vs = facet_vertices(f);
    if (space.dim <= 2 || vs.size() <= 3) return vs;
    if (space.dim != 3) throw DomainError("facet cycles are defined for 3-dimensional chambers");
    auto joined = [&](int a, int b) {
      int common = 0;
      for (int g : vertex_facets[a])
        if (incident(b, g)) ++common;
      return common >= 2;
    };
    std::vector<int> cycle{vs.front()};
    std::vector<bool> used(vs.size(), false);
    used[0] = true;
    while (cycle.size() < vs.size()) {
      bool advanced = false;
      for (size_t i = 0; i < vs.size(); ++i)
        if (!used[i] && joined(cycle.back(), vs[i])) {
          used[i] = true;
          cycle.push_back(vs[i]);
          advanced = true;
          break;
        }
      if (!advanced) throw InternalError("facet boundary is not a cycle");
    }
    return cycle;
  }
};

namespace detail {

/// LDL^T in index order with only the last pivot allowed to be negative;
/// returns rows u_i with u_i J u_j = G_ij, or false on an unusable pivot.
inline bool lorentz_factor(const Eigen::MatrixXd& g, Eigen::MatrixXd& rows) {
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd d(n);
  for (int j = 0; j < n; ++j) {
    double s = g(j, j);
    for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k) * d[k];
    d[j] = s;
    if (std::abs(s) < 1e-12 || (s < 0 && j != n - 1)) return false;
    for (int i = j + 1; i < n; ++i) {
      double t = g(i, j);
      for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k) * d[k];
      l(i, j) = t / s;
    }
  }
  if (d[n - 1] >= 0) return false;
  rows = l * d.cwiseAbs().cwiseSqrt().asDiagonal();
  return true;
}

/// Same factorization from the spectral decomposition, timelike axis last.
inline Eigen::MatrixXd lorentz_factor_spectral(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd rows(n, n);
  // Eigenvalues ascend, so the single negative one is first.
  for (int c = 1; c < n; ++c) rows.col(c - 1) = es.eigenvectors().col(c) * std::sqrt(es.eigenvalues()[c]);
  rows.col(n - 1) = es.eigenvectors().col(0) * std::sqrt(-es.eigenvalues()[0]);
  return rows;
}

inline int matrix_rank(const std::vector<Eigen::VectorXd>& vs, double tol = 1e-7) {
  if (vs.empty()) return 0;
  Eigen::MatrixXd m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

}  // namespace detail

/// Realizes the Coxeter simplex of a rank-N matrix in S^{N-1}, E^{N-1} or
/// L^{N-1} according to the signature of its cosine matrix.
inline GeometricChamber realize_simplex(const CoxeterMatrix& m) {
  const int n = m.rank();
  if (n < 2) throw DomainError("a simplex needs at least two facets");
  Eigen::MatrixXd g = m.cosine_matrix();
  Signature sig = signature(g);
  GeometricChamber ch;
  ch.labels = m;
  ch.vertex_facets.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int f = 0; f < n; ++f)
      if (f != v) ch.vertex_facets[v].push_back(f);
  ch.space.dim = n - 1;

  if (sig.positive == n) {
    ch.space.kind = SpaceKind::Spherical;
    Eigen::MatrixXd rows = Eigen::LLT<Eigen::MatrixXd>(g).matrixL();
    Eigen::MatrixXd dual = rows.inverse();
    for (int i = 0; i < n; ++i) {
      ch.normals.push_back(rows.row(i).transpose());
      ch.vertices.push_back(dual.col(i).normalized());
    }
    return ch;
  }

  if (sig.positive == n - 1 && sig.zero == 1) {
    ch.space.kind = SpaceKind::Euclidean;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    Eigen::VectorXd c = es.eigenvectors().col(0);
    if (c.sum() < 0) c = -c;
    if (c.minCoeff() <= 1e-9) throw UnsupportedSignature("Euclidean simplex needs an irreducible affine scheme");
    const int d = n - 1;
    Eigen::MatrixXd rows = Eigen::LLT<Eigen::MatrixXd>(g.topLeftCorner(d, d)).matrixL();
    Eigen::VectorXd last = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) last -= (c[i] / c[d]) * rows.row(i).transpose();
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd u(n);
      u.head(d) = i < d ? Eigen::VectorXd(rows.row(i).transpose()) : last;
      u[d] = i < d ? 0.0 : 1.0;
      ch.normals.push_back(u);
    }
    for (int v = 0; v < n; ++v) {
      Eigen::MatrixXd a(d, d);
      Eigen::VectorXd b(d);
      int r = 0;
      for (int f = 0; f < n; ++f) {
        if (f == v) continue;
        a.row(r) = ch.normals[f].head(d).transpose();
        b[r++] = -ch.normals[f][d];
      }
      Eigen::VectorXd p(n);
      p.head(d) = a.partialPivLu().solve(b);
      p[d] = 1.0;
      ch.vertices.push_back(p);
    }
    return ch;
  }

  if (sig.positive == n - 1 && sig.negative == 1) {
    ch.space.kind = SpaceKind::Hyperbolic;
    Eigen::MatrixXd rows;
    if (!detail::lorentz_factor(g, rows)) rows = detail::lorentz_factor_spectral(g);
    Eigen::MatrixXd j = ch.space.form();
    Eigen::MatrixXd dual = j * rows.inverse();  // column i pairs to zero with u_j, j != i
    Eigen::MatrixXd ginv = g.inverse();
    bool flip = false;
    for (int i = 0; i < n; ++i) {
      ch.normals.push_back(rows.row(i).transpose());
      Eigen::VectorXd v = dual.col(i);
      if (ginv(i, i) < -1e-12) {
        v /= std::sqrt(-ginv(i, i));
        flip = v[n - 1] < 0;
      } else {
        ch.compact = false;
      }
      ch.vertices.push_back(v);
    }
    if (flip) {
      // Time reversal keeps the Gram matrix and moves the cone to the upper sheet.
      for (auto& u : ch.normals) u[n - 1] = -u[n - 1];
      for (auto& v : ch.vertices) v[n - 1] = -v[n - 1];
    }
    return ch;
  }

  throw UnsupportedSignature("cosine matrix has signature (" + std::to_string(sig.positive) + "," +
                             std::to_string(sig.negative) + "," + std::to_string(sig.zero) + ")");
}

/// Builds a chamber from inward normals and vertex coordinates; incidences,
/// adjacency and labels are recovered from the geometry.
inline GeometricChamber chamber_from_polytope(const SpaceModel& space, std::vector<Eigen::VectorXd> normals,
                                              std::vector<Eigen::VectorXd> vertices, double tol = 1e-7) {
  GeometricChamber ch;
  ch.space = space;
  const int f = static_cast<int>(normals.size());
  if (f < 2) throw DomainError("a chamber needs at least two facets");
  for (auto& u : normals) u = space.normalize_normal(u);
  ch.normals = std::move(normals);
  ch.vertices = std::move(vertices);
  for (const auto& v : ch.vertices) {
    std::vector<int> fs;
    for (int i = 0; i < f; ++i) {
      double p = space.pair(ch.normals[i], v);
      if (p < -tol) throw DomainError("vertex lies outside a facet half-space");
      if (p <= tol) fs.push_back(i);
    }
    if (static_cast<int>(fs.size()) < space.dim) throw DomainError("vertex lies on too few facets");
    ch.vertex_facets.push_back(std::move(fs));
  }
  ch.labels = CoxeterMatrix(f);
  for (int a = 0; a < f; ++a)
    for (int b = a + 1; b < f; ++b) {
      std::vector<Eigen::VectorXd> common;
      for (int v : ch.hyperedge_vertices(a, b)) common.push_back(ch.vertices[v]);
      if (detail::matrix_rank(common) < space.dim - 1) {
        ch.labels.set_label(a, b, kInfinity);
        continue;
      }
      double theta = dihedral_angle(space, ch.normals[a], ch.normals[b]);
      int m = static_cast<int>(std::lround(std::numbers::pi / theta));
      if (m < 2 || std::abs(theta - std::numbers::pi / m) > 1e-6)
        throw AngleUnrecognized("dihedral angle " + std::to_string(theta) + " is not pi/m");
      ch.labels.set_label(a, b, m);
    }
  return ch;
}

}  // namespace coxroll
