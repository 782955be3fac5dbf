#pragma once

// Rolling a realized chamber over its odd hyperedges onto one of its mirrors,
// and the geometry of the resulting figure in the mirror.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coxroll/error.hpp"
#include "coxroll/geometry.hpp"
#include "coxroll/rolling.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

inline constexpr int kDefaultMaxTiles = 5000;
inline constexpr double kCoincidence = 1e-7;

/// Isometric identification of the hyperplane pair(u, .) = 0 with the
/// standard model one dimension down. Points and normals of hyperplanes
/// orthogonal to u map linearly.
struct MirrorChart {
  SpaceModel ambient;
  SpaceModel mirror;
  Eigen::VectorXd normal;
  Eigen::MatrixXd point_map;
  Eigen::MatrixXd normal_map;

  Eigen::VectorXd point(const Eigen::VectorXd& p) const { return point_map * p; }
  Eigen::VectorXd wall(const Eigen::VectorXd& w) const { return normal_map * w; }
};

inline MirrorChart make_chart(const SpaceModel& s, const Eigen::VectorXd& u) {
  const int n = s.ambient();
  if (s.dim < 1) throw DomainError("mirror charts need dimension >= 1");
  MirrorChart c{s, {s.kind, s.dim - 1}, s.normalize_normal(u), {}, {}};
  const Eigen::VectorXd& un = c.normal;

  if (s.kind == SpaceKind::Euclidean) {
    const int d = s.dim;
    Eigen::VectorXd a = un.head(d);
    Eigen::VectorXd origin = -un[d] * a;
    std::vector<Eigen::VectorXd> basis;
    for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(d, i);
      v -= v.dot(a) * a;
      for (const auto& f : basis) v -= v.dot(f) * f;
      if (v.norm() > 1e-6) basis.push_back(v.normalized());
    }
    c.point_map = Eigen::MatrixXd::Zero(d, n);
    c.normal_map = Eigen::MatrixXd::Zero(d, n);
    for (int i = 0; i < d - 1; ++i) {
      c.point_map.row(i).head(d) = basis[i].transpose();
      c.point_map(i, d) = -basis[i].dot(origin);
      c.normal_map.row(i).head(d) = basis[i].transpose();
    }
    c.point_map(d - 1, d) = 1.0;
    c.normal_map.row(d - 1).head(d) = origin.transpose();
    c.normal_map(d - 1, d) = 1.0;
    return c;
  }

  // Orthonormal basis of u-perp: spacelike vectors first, then (hyperbolic
  // case) a future timelike vector t whose coordinate is -<t, p>.
  std::vector<Eigen::VectorXd> basis;
  std::optional<Eigen::VectorXd> time;
  if (s.kind == SpaceKind::Hyperbolic) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, n - 1);
    Eigen::VectorXd t = e - s.point_inner(e, un) * un;
    time = t / std::sqrt(-s.point_inner(t, t));
  }
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1 - (time ? 1 : 0); ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
    v -= s.point_inner(v, un) * un;
    if (time) v += s.point_inner(v, *time) * *time;
    for (const auto& f : basis) v -= s.point_inner(v, f) * f;
    double n2 = s.point_inner(v, v);
    if (n2 > 1e-12) basis.push_back(v / std::sqrt(n2));
  }
  Eigen::MatrixXd j = s.form();
  c.point_map.resize(n - 1, n);
  for (size_t i = 0; i < basis.size(); ++i) c.point_map.row(static_cast<Eigen::Index>(i)) = (j * basis[i]).transpose();
  if (time) c.point_map.row(n - 2) = -(j * *time).transpose();
  c.normal_map = c.point_map;
  return c;
}

struct Tile {
  int node = 0;
  int facet = 0;
  int parent = -1;
  Isometry position;                      // chamber coordinates -> ambient
  std::vector<int> vertex_ids;            // chamber vertices, cyclic in 2-D
  std::vector<Eigen::VectorXd> vertices;  // mirror chart coordinates
};

/// A piece of the boundary of the developed chamber: the even hyperedge
/// between the tile's facet and `facet`.
struct BoundaryWall {
  int tile = 0;
  int facet = 0;
  int label = 0;
  Eigen::VectorXd ambient_normal;
  Eigen::VectorXd normal;  // in the mirror chart, pointing into the tile
  std::vector<int> vertex_ids;
};

struct DevelopedFigure {
  GeometricChamber chamber;
  int mirror_facet = 0;
  MirrorChart chart;
  DevelopmentTree tree;
  std::vector<Tile> tiles;
  std::vector<BoundaryWall> walls;
  bool truncated = false;
  bool full = false;

  int dimension() const { return chart.mirror.dim; }
};

namespace detail {

/// The element of <s_a, s_b> that carries facet b's hyperplane onto facet
/// a's while fixing their common hyperedge; exists because m_ab is odd.
inline Isometry roll_step(const GeometricChamber& ch, int a, int b) {
  int m = ch.labels.label(a, b);
  if (!is_odd_label(m)) throw DomainError("rolling needs an odd label");
  Isometry ra = reflection(ch.space, ch.normals[a]);
  Isometry rb = reflection(ch.space, ch.normals[b]);
  Isometry g1 = Isometry::identity(ch.space), g2 = g1;
  for (int i = 0; i < (m - 1) / 2; ++i) {
    g1 = g1 * (ra * rb);
    g2 = g2 * (rb * ra);
  }
  auto err = [&](const Isometry& g) { return (g.normal(ch.space, ch.normals[b]) - ch.normals[a]).norm(); };
  const Isometry& g = err(g1) <= err(g2) ? g1 : g2;
  if (err(g) > 1e-6) throw InternalError("no dihedral element exchanges the two facets");
  return g;
}

/// Unit normal of the mirror through the hyperedge a|c orthogonal to facet a,
/// pointing into the chamber.
inline Eigen::VectorXd wall_normal(const GeometricChamber& ch, int a, int c) {
  const auto& ua = ch.normals[a];
  return ch.space.normalize_normal(ch.normals[c] - ch.space.inner(ua, ch.normals[c]) * ua);
}

inline std::vector<int> tile_vertex_order(const GeometricChamber& ch, int facet) {
  return ch.space.dim <= 3 ? ch.facet_cycle(facet) : ch.facet_vertices(facet);
}

inline Tile make_tile(const GeometricChamber& ch, const MirrorChart& chart, const Isometry& pos, int facet,
                      int node, int parent) {
  Tile t{node, facet, parent, pos, tile_vertex_order(ch, facet), {}};
  for (int v : t.vertex_ids) t.vertices.push_back(chart.point(pos.point(ch.vertices[v])));
  return t;
}

inline Eigen::VectorXd centroid(const std::vector<Eigen::VectorXd>& pts) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(pts.front().size());
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

inline void check_rollable(const GeometricChamber& ch, int k) {
  if (!ch.compact) throw NotRealized("chamber has vertices at or beyond infinity");
  if (ch.space.dim < 2) throw DomainError("rolling needs a chamber of dimension >= 2");
  if (k < 0 || k >= ch.facet_count()) throw DomainError("facet index out of range");
}

}  // namespace detail

/// Lays the facets of the rolling component of k onto the mirror of k, one
/// tile per node of the development tree, and records the even walls where
/// rolling stops. Cyclic components are truncated at max_tiles.
inline DevelopedFigure roll_onto_mirror(const GeometricChamber& ch, int k, int max_tiles = kDefaultMaxTiles) {
  detail::check_rollable(ch, k);
  DevelopedFigure df;
  df.chamber = ch;
  df.mirror_facet = k;
  df.chart = make_chart(ch.space, ch.normals[k]);
  auto comps = components(rolling_scheme(ch.labels));
  df.tree = unfold(component_of(comps, k), k, max_tiles);
  df.truncated = !df.tree.complete;

  std::vector<Isometry> pos(df.tree.nodes.size(), Isometry::identity(ch.space));
  for (const auto& e : df.tree.edges) pos[e.to] = pos[e.from] * detail::roll_step(ch, e.a, e.b);
  for (const auto& node : df.tree.nodes) {
    df.tiles.push_back(detail::make_tile(ch, df.chart, pos[node.id], node.facet, node.id, node.parent));
    const int a = node.facet;
    for (int c = 0; c < ch.facet_count(); ++c) {
      if (!ch.adjacent(a, c) || is_odd_label(ch.labels.label(a, c))) continue;
      Eigen::VectorXd w = pos[node.id].normal(ch.space, detail::wall_normal(ch, a, c));
      df.walls.push_back({node.id, c, ch.labels.label(a, c), w, df.chart.wall(w), ch.hyperedge_vertices(a, c)});
    }
  }
  return df;
}

/// Tiling of the mirror by all facet traces lying in it: rolling over odd
/// hyperedges plus reflection in the even walls. Infinite tilings are
/// truncated at max_tiles.
inline DevelopedFigure full_development(const GeometricChamber& ch, int k, int max_tiles = kDefaultMaxTiles) {
  detail::check_rollable(ch, k);
  DevelopedFigure df;
  df.chamber = ch;
  df.mirror_facet = k;
  df.full = true;
  df.chart = make_chart(ch.space, ch.normals[k]);

  std::map<std::pair<int, int>, Isometry> steps;
  auto step = [&](int a, int c) -> const Isometry& {
    auto key = std::make_pair(a, c);
    auto it = steps.find(key);
    if (it != steps.end()) return it->second;
    Isometry g = is_odd_label(ch.labels.label(a, c)) ? detail::roll_step(ch, a, c)
                                                     : reflection(ch.space, detail::wall_normal(ch, a, c));
    return steps.emplace(key, std::move(g)).first->second;
  };

  std::vector<Eigen::VectorXd> centres;
  auto known = [&](int facet, const Eigen::VectorXd& c) {
    for (size_t i = 0; i < df.tiles.size(); ++i)
      if (df.tiles[i].facet == facet && (centres[i] - c).norm() <= 1e-6) return true;
    return false;
  };
  auto add = [&](Tile t) {
    centres.push_back(detail::centroid(t.vertices));
    df.tiles.push_back(std::move(t));
  };
  add(detail::make_tile(ch, df.chart, Isometry::identity(ch.space), k, 0, -1));
  for (size_t head = 0; head < df.tiles.size(); ++head) {
    const int a = df.tiles[head].facet;
    for (int c = 0; c < ch.facet_count(); ++c) {
      if (!ch.adjacent(a, c)) continue;
      const int next = is_odd_label(ch.labels.label(a, c)) ? c : a;
      Isometry p = df.tiles[head].position * step(a, c);
      Tile t = detail::make_tile(ch, df.chart, p, next, static_cast<int>(df.tiles.size()), static_cast<int>(head));
      if (known(next, detail::centroid(t.vertices))) continue;
      if (static_cast<int>(df.tiles.size()) >= max_tiles) {
        df.truncated = true;
        return df;
      }
      add(std::move(t));
    }
  }
  return df;
}

// ---------------------------------------------------------------------------
// Measurement

namespace detail {

inline std::vector<Eigen::VectorXd> distinct_walls(const DevelopedFigure& df) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& w : df.walls) {
    Eigen::VectorXd n = df.chart.mirror.normalize_normal(w.normal);
    bool seen = std::any_of(out.begin(), out.end(), [&](const auto& o) { return (o - n).norm() <= kCoincidence; });
    if (!seen) out.push_back(n);
  }
  return out;
}

inline std::vector<Eigen::VectorXd> distinct_points(const DevelopedFigure& df) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& t : df.tiles)
    for (const auto& p : t.vertices)
      if (std::none_of(out.begin(), out.end(), [&](const auto& o) { return (o - p).norm() <= kCoincidence; }))
        out.push_back(p);
  return out;
}

inline std::vector<int> walls_through(const SpaceModel& s, const std::vector<Eigen::VectorXd>& walls,
                                      const Eigen::VectorXd& p) {
  std::vector<int> out;
  for (size_t i = 0; i < walls.size(); ++i)
    if (std::abs(s.pair(walls[i], p)) <= kCoincidence) out.push_back(static_cast<int>(i));
  return out;
}

inline void require_complete(const DevelopedFigure& df) {
  if (df.truncated) throw Truncated("development was truncated before closing up");
  if (df.full) throw DomainError("expected a chamber development, not a full tiling");
}

}  // namespace detail

struct PolygonMeasure {
  int dimension = 0;
  std::vector<double> sides;   // 2-D: side lengths in cyclic order; 1-D: one entry, the length
  std::vector<double> angles;  // 2-D: interior angle at the end of each side
  std::vector<Eigen::VectorXd> corners;
  int wall_count = 0;
  double length = 0.0;  // perimeter (2-D) or total length (1-D)
};

/// Sides and angles of the developed chamber in the intrinsic metric of the
/// mirror. A 1-dimensional development is an arc whose length is also the
/// opening angle of its two end walls.
inline PolygonMeasure measure_polygon(const DevelopedFigure& df) {
  detail::require_complete(df);
  const SpaceModel& s = df.chart.mirror;
  PolygonMeasure out;
  out.dimension = s.dim;
  auto walls = detail::distinct_walls(df);
  out.wall_count = static_cast<int>(walls.size());

  if (s.dim == 1) {
    for (const auto& t : df.tiles) out.length += s.distance(t.vertices[0], t.vertices[1]);
    out.sides = {out.length};
    return out;
  }
  if (s.dim != 2) throw DomainError("polygon measurement needs a 1- or 2-dimensional development");

  std::vector<Eigen::VectorXd> corners;
  std::vector<std::vector<int>> corner_walls;
  for (const auto& p : detail::distinct_points(df)) {
    auto ws = detail::walls_through(s, walls, p);
    if (ws.size() >= 2) {
      if (ws.size() > 2) throw InternalError("more than two walls through a polygon corner");
      corners.push_back(p);
      corner_walls.push_back(ws);
    }
  }
  if (corners.size() != walls.size()) throw InternalError("developed chamber is not a closed polygon");
  auto other_corner = [&](int wall, int from) {
    for (size_t c = 0; c < corners.size(); ++c)
      if (static_cast<int>(c) != from &&
          std::find(corner_walls[c].begin(), corner_walls[c].end(), wall) != corner_walls[c].end())
        return static_cast<int>(c);
    throw InternalError("polygon side has a single corner");
  };
  int cur = 0;
  int wall = corner_walls[0][1];
  for (size_t i = 0; i < corners.size(); ++i) {
    int next = other_corner(wall, cur);
    int next_wall = corner_walls[next][0] == wall ? corner_walls[next][1] : corner_walls[next][0];
    double len = s.distance(corners[cur], corners[next]);
    out.sides.push_back(len);
    out.length += len;
    out.angles.push_back(dihedral_angle(s, walls[wall], walls[next_wall]));
    out.corners.push_back(corners[cur]);
    cur = next;
    wall = next_wall;
  }
  if (cur != 0) throw InternalError("polygon walk did not close");
  return out;
}

/// The developed chamber as a chamber of the mirror's own geometry: facets
/// are the distinct walls, vertices the tile vertices lying on enough walls.
inline GeometricChamber rechamber(const DevelopedFigure& df) {
  detail::require_complete(df);
  const SpaceModel& s = df.chart.mirror;
  if (s.dim < 2) throw DomainError("re-chambering needs a development of dimension >= 2");
  auto walls = detail::distinct_walls(df);
  std::vector<Eigen::VectorXd> vertices;
  for (const auto& p : detail::distinct_points(df))
    if (static_cast<int>(detail::walls_through(s, walls, p).size()) >= s.dim) vertices.push_back(p);
  return chamber_from_polytope(s, walls, vertices);
}

/// Meeting of the subdivision lines with the boundary at a vertex of a 2-D
/// development; the tag follows the rank-3 group of the chamber vertex:
/// a = A1 + odd dihedral, b = BC3, c = A3, d = H3.
struct MeetingVariant {
  char tag = '?';
  CoxeterType vertex_type;
  std::vector<double> tile_angles;  // fan order, from one wall to the other
  std::vector<double> incidence;    // first and last fan angles
};

struct BoundaryPoint {
  Eigen::VectorXd point;  // mirror chart
  int chamber_vertex = 0;
};

inline std::vector<BoundaryPoint> boundary_points(const DevelopedFigure& df) {
  auto walls = detail::distinct_walls(df);
  std::vector<BoundaryPoint> out;
  for (const auto& t : df.tiles)
    for (size_t i = 0; i < t.vertices.size(); ++i) {
      const auto& p = t.vertices[i];
      if (detail::walls_through(df.chart.mirror, walls, p).empty()) continue;
      if (std::any_of(out.begin(), out.end(), [&](const auto& b) { return (b.point - p).norm() <= kCoincidence; }))
        continue;
      out.push_back({p, t.vertex_ids[i]});
    }
  return out;
}

inline MeetingVariant classify_meeting(const DevelopedFigure& df, const Eigen::VectorXd& point) {
  const SpaceModel& s = df.chart.mirror;
  if (s.dim != 2) throw DomainError("meetings are classified on 2-dimensional developments");
  auto walls = detail::distinct_walls(df);
  if (detail::walls_through(s, walls, point).empty()) throw DomainError("point is not on the chamber boundary");

  // Tangent rays at the point along the tile edges through it.
  std::vector<Eigen::VectorXd> rays;
  int vertex = -1;
  auto tangent = [&](const Eigen::VectorXd& q) -> Eigen::VectorXd {
    switch (s.kind) {
      case SpaceKind::Spherical: return q - q.dot(point) * point;
      case SpaceKind::Hyperbolic: return q + s.point_inner(q, point) * point;
      case SpaceKind::Euclidean: {
        Eigen::VectorXd t = q / q[s.dim] - point / point[s.dim];
        t[s.dim] = 0.0;
        return t;
      }
    }
    return q;
  };
  for (const auto& t : df.tiles) {
    const size_t n = t.vertices.size();
    for (size_t i = 0; i < n; ++i) {
      if ((t.vertices[i] - point).norm() > kCoincidence) continue;
      vertex = t.vertex_ids[i];
      for (size_t nb : {(i + 1) % n, (i + n - 1) % n}) {
        Eigen::VectorXd r = tangent(t.vertices[nb]);
        r /= std::sqrt(s.inner(r, r));
        bool seen = std::any_of(rays.begin(), rays.end(), [&](const auto& o) { return s.inner(o, r) > 1 - 1e-12; });
        if (!seen) rays.push_back(r);
      }
    }
  }
  if (vertex < 0) throw DomainError("point is not a tile vertex");

  MeetingVariant mv;
  mv.vertex_type = classify(df.chamber.labels.principal(df.chamber.vertex_facets[vertex]));
  const auto& parts = mv.vertex_type.summands();
  auto is = [&](const char* t) { return mv.vertex_type == CoxeterType::parse(t); };
  if (is("A3")) {
    mv.tag = 'c';
  } else if (is("BC3")) {
    mv.tag = 'b';
  } else if (is("H3")) {
    mv.tag = 'd';
  } else if (parts.size() == 2 && parts[0] == Summand{Family::A, 1, 0} &&
             (parts[1] == Summand{Family::A, 2, 0} || (parts[1].family == Family::G && parts[1].m % 2 == 1))) {
    mv.tag = 'a';
  } else {
    throw DomainError("vertex group " + mv.vertex_type.str() + " is not a boundary meeting variant");
  }

  Eigen::VectorXd e1 = rays.front();
  Eigen::VectorXd e2;
  for (const auto& r : rays) {
    Eigen::VectorXd v = r - s.inner(r, e1) * e1;
    if (s.inner(v, v) > 1e-12) {
      e2 = v / std::sqrt(s.inner(v, v));
      break;
    }
  }
  if (e2.size() == 0) throw InternalError("degenerate fan at boundary point");
  std::vector<double> phi;
  for (const auto& r : rays) phi.push_back(std::atan2(s.inner(r, e2), s.inner(r, e1)));
  std::sort(phi.begin(), phi.end());
  // The fan lies in a half-plane; the largest circular gap is outside it.
  size_t start = 0;
  double widest = -1;
  for (size_t i = 0; i < phi.size(); ++i) {
    double gap = i == 0 ? phi[0] + 2 * std::numbers::pi - phi.back() : phi[i] - phi[i - 1];
    if (gap > widest) {
      widest = gap;
      start = i;
    }
  }
  for (size_t i = 1; i < phi.size(); ++i) {
    double a = phi[(start + i - 1) % phi.size()], b = phi[(start + i) % phi.size()];
    mv.tile_angles.push_back(b >= a ? b - a : b - a + 2 * std::numbers::pi);
  }
  mv.incidence = {mv.tile_angles.front(), mv.tile_angles.back()};
  return mv;
}

/// Roll a simplex onto one of its mirrors, turn the development into a
/// chamber of that mirror, and roll the result again.
struct TwoStageResult {
  GeometricChamber simplex;
  DevelopedFigure first;
  GeometricChamber middle;
  DevelopedFigure second;
};

inline TwoStageResult two_stage(const CoxeterMatrix& m, int first, int second, int max_tiles = kDefaultMaxTiles) {
  TwoStageResult r;
  r.simplex = realize_simplex(m);
  r.first = roll_onto_mirror(r.simplex, first, max_tiles);
  r.middle = rechamber(r.first);
  r.second = roll_onto_mirror(r.middle, second, max_tiles);
  return r;
}

}  // namespace coxroll
