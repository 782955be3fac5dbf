#pragma once

// Andreev's conditions for a compact Coxeter polyhedron in L^3, checked on a
// labeled trivalent planar map (faces as vertex cycles, dihedral labels on
// edges).

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxroll/error.hpp"
#include "coxroll/geometry.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

class PlanarAngleMap {
 public:
  using Edge = std::pair<int, int>;  // first < second

  PlanarAngleMap() = default;

  /// Builds and validates a map; labels not listed default to 2.
  PlanarAngleMap(int vertex_count, std::vector<std::vector<int>> faces, const std::map<Edge, int>& labels = {})
      : vertex_count_(vertex_count), faces_(std::move(faces)) {
    build();
    for (const auto& [e, m] : labels) set_label(e.first, e.second, m);
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int label(int edge) const { return labels_[static_cast<size_t>(edge)]; }

  int edge_index(int a, int b) const {
    const Edge key = std::minmax(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  void set_label(int a, int b, int m) {
    int e = edge_index(a, b);
    if (e < 0) throw MalformedMap("labelled pair " + std::to_string(a + 1) + "-" + std::to_string(b + 1) + " is not an edge");
    if (m < 2) throw MalformedMap("edge label must be >= 2");
    labels_[e] = m;
  }

  /// The two faces on each side of an edge.
  const std::pair<int, int>& edge_faces(int e) const { return edge_faces_[static_cast<size_t>(e)]; }
  /// The three edges at a vertex, sorted.
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[static_cast<size_t>(v)]; }
  /// The three faces at a vertex, sorted.
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[static_cast<size_t>(v)]; }

  /// Edge shared by two faces, or -1.
  int common_edge(int f, int g) const {
    auto it = face_pair_edge_.find(std::minmax(f, g));
    return it == face_pair_edge_.end() ? -1 : it->second;
  }

 private:
  void build() {
    if (vertex_count_ < 1) throw MalformedMap("map needs vertices");
    std::map<Edge, std::vector<int>> incidence;
    for (int f = 0; f < face_count(); ++f) {
      const auto& face = faces_[f];
      if (face.size() < 3) throw MalformedMap("face " + std::to_string(f + 1) + " has fewer than 3 edges");
      std::set<int> distinct(face.begin(), face.end());
      if (distinct.size() != face.size()) throw MalformedMap("face " + std::to_string(f + 1) + " repeats a vertex");
      for (size_t i = 0; i < face.size(); ++i) {
        int a = face[i], b = face[(i + 1) % face.size()];
        if (a < 0 || a >= vertex_count_) throw MalformedMap("face vertex out of range");
        incidence[std::minmax(a, b)].push_back(f);
      }
    }
    vertex_edges_.assign(static_cast<size_t>(vertex_count_), {});
    vertex_faces_.assign(static_cast<size_t>(vertex_count_), {});
    for (const auto& [e, fs] : incidence) {
      if (fs.size() != 2 || fs[0] == fs[1])
        throw MalformedMap("edge " + std::to_string(e.first + 1) + "-" + std::to_string(e.second + 1) +
                           " does not border exactly two faces");
      int id = static_cast<int>(edges_.size());
      edges_.push_back(e);
      edge_faces_.push_back(std::minmax(fs[0], fs[1]));
      if (!face_pair_edge_.emplace(std::minmax(fs[0], fs[1]), id).second)
        throw MalformedMap("two faces share more than one edge");
      vertex_edges_[e.first].push_back(id);
      vertex_edges_[e.second].push_back(id);
    }
    labels_.assign(edges_.size(), 2);
    for (int v = 0; v < vertex_count_; ++v) {
      if (vertex_edges_[v].size() != 3)
        throw MalformedMap("vertex " + std::to_string(v + 1) + " has degree " + std::to_string(vertex_edges_[v].size()));
      std::set<int> fs;
      for (int e : vertex_edges_[v]) fs.insert({edge_faces_[e].first, edge_faces_[e].second});
      vertex_faces_[v].assign(fs.begin(), fs.end());
    }
    if (vertex_count_ - edge_count() + face_count() != 2) throw MalformedMap("Euler characteristic is not 2");
  }

  int vertex_count_ = 0;
  std::vector<std::vector<int>> faces_;
  std::vector<Edge> edges_;
  std::vector<int> labels_;
  std::vector<std::pair<int, int>> edge_faces_;
  std::vector<std::vector<int>> vertex_edges_;
  std::vector<std::vector<int>> vertex_faces_;
  std::map<std::pair<int, int>, int> face_pair_edge_;
};

/// Map file: `vertices N`, then `face v1 ... vk` and `edge vi vj m` lines
/// (1-based); `#` starts a comment.
inline PlanarAngleMap parse_map(std::string_view text) {
  std::optional<int> count;
  std::vector<std::vector<int>> faces;
  struct Pending {
    int a, b, m, line, column;
  };
  std::vector<Pending> labels;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::vector<std::pair<std::string, int>> tok;
    for (size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      size_t s = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      tok.emplace_back(std::string(raw.substr(s, i - s)), static_cast<int>(s) + 1);
    }
    if (tok.empty()) continue;
    auto num = [&](size_t k) {
      const auto& [t, col] = tok[k];
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a positive integer, got '" + t + "'", line_no, col);
      try {
        return std::stoi(t);
      } catch (const std::exception&) {
        throw ParseError("integer out of range", line_no, col);
      }
    };
    auto vertex = [&](size_t k) {
      int v = num(k);
      if (v < 1 || v > *count) throw ParseError("vertex index out of range", line_no, tok[k].second);
      return v - 1;
    };
    const std::string& kw = tok[0].first;
    if (kw == "vertices") {
      if (count) throw ParseError("duplicate 'vertices' line", line_no, 1);
      if (tok.size() != 2) throw ParseError("expected 'vertices N'", line_no, tok[0].second);
      count = num(1);
    } else if (!count) {
      throw ParseError("expected 'vertices N' first", line_no, tok[0].second);
    } else if (kw == "face") {
      if (tok.size() < 4) throw ParseError("a face needs at least 3 vertices", line_no, tok[0].second);
      std::vector<int> face;
      for (size_t k = 1; k < tok.size(); ++k) face.push_back(vertex(k));
      faces.push_back(std::move(face));
    } else if (kw == "edge") {
      if (tok.size() != 4) throw ParseError("expected 'edge vi vj m'", line_no, tok[0].second);
      int m = num(3);
      if (m < 2) throw ParseError("label must be >= 2", line_no, tok[3].second);
      labels.push_back({vertex(1), vertex(2), m, line_no, tok[0].second});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line_no, tok[0].second);
    }
  }
  if (!count) throw ParseError("missing 'vertices N' line", line_no, 1);
  PlanarAngleMap pm(*count, std::move(faces));
  for (const auto& l : labels) {
    if (pm.edge_index(l.a, l.b) < 0) throw ParseError("labelled pair is not an edge of the map", l.line, l.column);
    pm.set_label(l.a, l.b, l.m);
  }
  return pm;
}

struct Violation {
  std::string condition;  // "vertex", "prismatic-3", "prismatic-4", "forbidden-quad" or a plugin name
  std::vector<int> witness;  // a vertex, or the faces of a circuit
  std::string detail;
};

struct AndreevVerdict {
  bool pass = false;
  std::vector<Violation> violations;
  std::vector<std::optional<CoxeterType>> vertex_types;  // set for accepted vertices
  bool simplex_warning = false;  // the theorem assumes more than 4 vertices
};

/// sum 1/m_i > 1, in integers.
inline bool spherical_triple(int a, int b, int c) {
  std::int64_t x = a, y = b, z = c;
  return y * z + x * z + x * y > x * y * z;
}

/// The four families of finite rank-3 Coxeter groups with all labels >= 2:
/// (2,2,m), (2,3,3), (2,3,4), (2,3,5).
inline bool catalogue_triple(int a, int b, int c) {
  std::array<int, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == 2 && t[1] == 2) return true;
  return t[0] == 2 && t[1] == 3 && t[2] >= 3 && t[2] <= 5;
}

/// Type of the vertex group for three faces meeting pairwise at labels
/// (m_ab, m_bc, m_ca).
inline CoxeterType triple_type(int ab, int bc, int ca) {
  CoxeterMatrix m(3);
  m.set_label(0, 1, ab);
  m.set_label(1, 2, bc);
  m.set_label(2, 0, ca);
  return classify(m);
}

inline std::vector<Violation> check_vertices(const PlanarAngleMap& pm,
                                             std::vector<std::optional<CoxeterType>>* types = nullptr) {
  std::vector<Violation> out;
  if (types) types->assign(static_cast<size_t>(pm.vertex_count()), std::nullopt);
  for (int v = 0; v < pm.vertex_count(); ++v) {
    const auto& fs = pm.vertex_faces(v);
    int ab = pm.label(pm.common_edge(fs[0], fs[1]));
    int bc = pm.label(pm.common_edge(fs[1], fs[2]));
    int ca = pm.label(pm.common_edge(fs[2], fs[0]));
    bool inequality = spherical_triple(ab, bc, ca);
    CoxeterType t = triple_type(ab, bc, ca);
    if (inequality != catalogue_triple(ab, bc, ca) || inequality != t.finite())
      throw InternalError("vertex criteria disagree");
    if (inequality) {
      if (types) (*types)[v] = t;
    } else {
      out.push_back({"vertex", {v},
                     "labels (" + std::to_string(ab) + "," + std::to_string(bc) + "," + std::to_string(ca) +
                         ") have angle sum <= pi"});
    }
  }
  return out;
}

/// Face circuits of length k (3 or 4): consecutive faces share an edge, no
/// two non-consecutive faces share an edge, and no three faces share a
/// vertex. Each circuit is listed once, starting at its smallest face.
inline std::vector<std::vector<int>> prismatic_circuits(const PlanarAngleMap& pm, int k) {
  if (k != 3 && k != 4) throw DomainError("prismatic circuits are enumerated for k = 3, 4");
  const int f = pm.face_count();
  std::vector<std::set<int>> face_vertices(static_cast<size_t>(f));
  for (int i = 0; i < f; ++i) face_vertices[i].insert(pm.faces()[i].begin(), pm.faces()[i].end());
  auto adjacent = [&](int a, int b) { return pm.common_edge(a, b) >= 0; };
  auto share_vertex = [&](int a, int b, int c) {
    for (int v : face_vertices[a])
      if (face_vertices[b].count(v) && face_vertices[c].count(v)) return true;
    return false;
  };
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::function<void()> extend = [&]() {
    if (static_cast<int>(path.size()) == k) {
      if (!adjacent(path.back(), path.front())) return;
      if (path[1] > path.back()) return;  // one orientation only
      for (int i = 0; i < k; ++i)
        for (int j = i + 2; j < k; ++j)
          if (!(i == 0 && j == k - 1) && adjacent(path[i], path[j])) return;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int l = j + 1; l < k; ++l)
            if (share_vertex(path[i], path[j], path[l])) return;
      out.push_back(path);
      return;
    }
    for (int g = path.front() + 1; g < f; ++g) {
      if (std::find(path.begin(), path.end(), g) != path.end() || !adjacent(path.back(), g)) continue;
      path.push_back(g);
      extend();
      path.pop_back();
    }
  };
  for (int s = 0; s < f; ++s) {
    path = {s};
    extend();
  }
  return out;
}

/// A k-circuit violates the condition when sum pi/m_i >= (k - 2) pi, that is
/// when the exterior angles do not exceed 2 pi.
inline std::vector<Violation> check_prismatic(const PlanarAngleMap& pm, int k) {
  std::vector<Violation> out;
  for (const auto& c : prismatic_circuits(pm, k)) {
    // sum 1/m_i >= k - 2 with a common denominator.
    std::int64_t denom = 1;
    std::vector<int> ms;
    for (int i = 0; i < k; ++i) {
      ms.push_back(pm.label(pm.common_edge(c[i], c[(i + 1) % k])));
      denom *= ms.back();
    }
    std::int64_t num = 0;
    for (int m : ms) num += denom / m;
    if (num >= static_cast<std::int64_t>(k - 2) * denom) {
      std::string d = "labels";
      for (int m : ms) d += " " + std::to_string(m);
      out.push_back({"prismatic-" + std::to_string(k), c, d});
    }
  }
  return out;
}

/// Quadrilateral faces all of whose face angles are forced to pi/2. By the
/// spherical cosine rule on the vertex link, the face angle at a vertex is
/// a right angle iff the edge leaving the face has label 2 and one of the two
/// face edges at the vertex has label 2.
inline std::vector<Violation> check_forbidden_quad(const PlanarAngleMap& pm) {
  std::vector<Violation> out;
  for (int f = 0; f < pm.face_count(); ++f) {
    const auto& face = pm.faces()[f];
    if (face.size() != 4) continue;
    bool all_right = true;
    for (size_t i = 0; i < 4 && all_right; ++i) {
      int v = face[i];
      int prev = pm.edge_index(v, face[(i + 3) % 4]);
      int next = pm.edge_index(v, face[(i + 1) % 4]);
      int off = -1;
      for (int e : pm.vertex_edges(v))
        if (e != prev && e != next) off = e;
      all_right = pm.label(off) == 2 && (pm.label(prev) == 2 || pm.label(next) == 2);
    }
    if (all_right) out.push_back({"forbidden-quad", {f}, "quadrilateral face with four right angles"});
  }
  return out;
}

using AndreevCondition = std::function<std::vector<Violation>(const PlanarAngleMap&)>;

inline AndreevVerdict check_all(const PlanarAngleMap& pm, const std::vector<AndreevCondition>& extra = {}) {
  AndreevVerdict v;
  v.simplex_warning = pm.vertex_count() <= 4;
  auto append = [&](std::vector<Violation> more) {
    v.violations.insert(v.violations.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(check_vertices(pm, &v.vertex_types));
  append(check_prismatic(pm, 3));
  append(check_prismatic(pm, 4));
  append(check_forbidden_quad(pm));
  for (const auto& cond : extra) append(cond(pm));
  v.pass = v.violations.empty();
  return v;
}

/// Labeled planar map of a realized 3-dimensional chamber.
inline PlanarAngleMap planar_map_from_chamber(const GeometricChamber& ch) {
  if (ch.space.dim != 3) throw DomainError("planar maps come from 3-dimensional chambers");
  std::vector<std::vector<int>> faces;
  for (int f = 0; f < ch.facet_count(); ++f) faces.push_back(ch.facet_cycle(f));
  PlanarAngleMap pm(ch.vertex_count(), std::move(faces));
  for (int e = 0; e < pm.edge_count(); ++e) {
    auto [f, g] = pm.edge_faces(e);
    int m = ch.labels.label(f, g);
    if (is_infinite_label(m)) throw InternalError("edge between non-adjacent facets");
    pm.set_label(pm.edges()[e].first, pm.edges()[e].second, m);
  }
  return pm;
}

}  // namespace coxroll
