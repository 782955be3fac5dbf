#pragma once

// JSON views of the library's results. Floats carry 12 significant digits,
// facet, vertex and generator indices are 1-based as in the input files, and
// every list is emitted in a fixed order so equal inputs give equal bytes.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "coxroll/andreev.hpp"
#include "coxroll/develop.hpp"
#include "coxroll/reduction.hpp"
#include "coxroll/roots.hpp"
#include "coxroll/rolling.hpp"
#include <json.hpp>

namespace coxroll::io {

using Json = nlohmann::ordered_json;

inline double round12(double x) {
  if (std::abs(x) < 1e-13) return 0.0;  // no "-0" and no rounding noise around zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline Json vec(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(round12(v[i]));
  return a;
}

inline Json vecs(const std::vector<Eigen::VectorXd>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

inline Json one_based(const std::vector<int>& xs) {
  Json a = Json::array();
  for (int x : xs) a.push_back(x + 1);
  return a;
}

inline Json label_json(int m) { return is_infinite_label(m) ? Json("inf") : Json(m); }

/// Labels other than 2, keyed "i-j" with i < j.
inline Json labels_json(const CoxeterMatrix& m) {
  Json o = Json::object();
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j)
      if (m.label(i, j) != 2) o[std::to_string(i + 1) + "-" + std::to_string(j + 1)] = label_json(m.label(i, j));
  return o;
}

inline Json roots_json(const RootSystem& rs) {
  Json a = Json::array();
  for (int i = 0; i < rs.positive_count(); ++i) a.push_back(vec(rs.root(i).coords));
  return Json{{"positive", a}};
}

inline Json tree_json(const DevelopmentTree& t) {
  Json nodes = Json::array(), edges = Json::array();
  for (const auto& n : t.nodes) nodes.push_back({{"id", n.id}, {"facet", n.facet + 1}, {"depth", n.depth}});
  for (const auto& e : t.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"hyperedge", {e.a + 1, e.b + 1}}, {"label", label_json(e.label)}});
  return {{"complete", t.complete}, {"nodes", nodes}, {"edges", edges}};
}

inline Json chamber_json(const GeometricChamber& ch) {
  Json incidence = Json::array();
  for (const auto& fs : ch.vertex_facets) incidence.push_back(one_based(fs));
  return {{"kind", to_string(ch.space.kind)},
          {"dim", ch.space.dim},
          {"compact", ch.compact},
          {"normals", vecs(ch.normals)},
          {"vertices", vecs(ch.vertices)},
          {"vertex_facets", incidence},
          {"labels", labels_json(ch.labels)}};
}

inline Json reduction_json(const ReductionResult& r) {
  return {{"source", r.source.str()}, {"orbit", to_string(r.orbit)}, {"result", r.result.str()}};
}

inline Json measure_json(const PolygonMeasure& pm) {
  Json sides = Json::array(), angles = Json::array();
  for (double s : pm.sides) sides.push_back(round12(s));
  for (double a : pm.angles) angles.push_back(round12(a));
  return {{"dimension", pm.dimension}, {"walls", pm.wall_count}, {"length", round12(pm.length)},
          {"sides", sides}, {"angles", angles}};
}

inline Json figure_json(const DevelopedFigure& df) {
  Json tiles = Json::array(), walls = Json::array();
  for (const auto& t : df.tiles)
    tiles.push_back({{"node", t.node},
                     {"facet", t.facet + 1},
                     {"parent", t.parent},
                     {"vertex_ids", one_based(t.vertex_ids)},
                     {"vertices", vecs(t.vertices)}});
  for (const auto& w : df.walls)
    walls.push_back({{"tile", w.tile},
                     {"facet", w.facet + 1},
                     {"label", label_json(w.label)},
                     {"normal", vec(w.normal)},
                     {"vertex_ids", one_based(w.vertex_ids)}});
  return {{"mirror", df.mirror_facet + 1},
          {"kind", to_string(df.chart.mirror.kind)},
          {"dim", df.dimension()},
          {"full", df.full},
          {"truncated", df.truncated},
          {"tiles", tiles},
          {"walls", walls}};
}

inline Json verdict_json(const AndreevVerdict& v) {
  Json violations = Json::array(), types = Json::array();
  for (const auto& x : v.violations)
    violations.push_back({{"condition", x.condition}, {"witness", one_based(x.witness)}, {"detail", x.detail}});
  for (const auto& t : v.vertex_types) types.push_back(t ? Json(t->str()) : Json(nullptr));
  return {{"pass", v.pass}, {"simplex_warning", v.simplex_warning}, {"violations", violations}, {"vertex_types", types}};
}

inline Json equipment_json(const Equipment& eq) {
  Json strata = Json::array();
  for (const auto& s : eq.strata) strata.push_back({{"generators", one_based(s.generators)}, {"type", s.type.str()}});
  return {{"type", classify(eq.scheme).str()}, {"strata", strata}};
}

}  // namespace coxroll::io
