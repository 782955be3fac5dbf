#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "coxroll/andreev.hpp"

using namespace coxroll;

namespace {

PlanarAngleMap load(const std::string& name) {
  std::ifstream in(std::string(COXROLL_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

std::map<std::string, int> condition_counts(const AndreevVerdict& v) {
  std::map<std::string, int> out;
  for (const auto& x : v.violations) ++out[x.condition];
  return out;
}

bool has(const AndreevVerdict& v, const std::string& condition) { return condition_counts(v).count(condition) > 0; }

// Same polyhedron under renamed vertices, shuffled faces and (optionally) reversed orientation.
PlanarAngleMap relabel(const PlanarAngleMap& pm, std::mt19937& rng, bool mirror) {
  std::vector<int> perm(pm.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> faces;
  for (const auto& f : pm.faces()) {
    std::vector<int> g;
    for (int v : f) g.push_back(perm[v]);
    if (mirror) std::reverse(g.begin(), g.end());
    std::rotate(g.begin(), g.begin() + static_cast<long>(rng() % g.size()), g.end());
    faces.push_back(g);
  }
  std::shuffle(faces.begin(), faces.end(), rng);
  std::map<PlanarAngleMap::Edge, int> labels;
  for (int e = 0; e < pm.edge_count(); ++e) {
    auto [a, b] = pm.edges()[e];
    labels[std::minmax(perm[a], perm[b])] = pm.label(e);
  }
  return PlanarAngleMap(pm.vertex_count(), faces, labels);
}

}  // namespace

TEST(Andreev, RightAngledDodecahedronPasses) {
  auto pm = load("dodecahedron.map");
  EXPECT_EQ(pm.face_count(), 12);
  EXPECT_EQ(pm.vertex_count(), 20);
  EXPECT_EQ(pm.edge_count(), 30);
  auto v = check_all(pm);
  EXPECT_TRUE(v.pass);
  EXPECT_FALSE(v.simplex_warning);
  for (const auto& t : v.vertex_types) EXPECT_EQ(t, CoxeterType::parse("A1+A1+A1"));
}

TEST(Andreev, RightAngledCubeFailsOnABelt) {
  auto v = check_all(load("cube.map"));
  EXPECT_FALSE(v.pass);
  auto counts = condition_counts(v);
  EXPECT_EQ(counts["prismatic-4"], 3);  // the three belts
  EXPECT_EQ(counts["forbidden-quad"], 6);  // a right-angled quadrangle cannot be hyperbolic
  EXPECT_EQ(counts["vertex"], 0);
  for (const auto& x : v.violations) {
    if (x.condition == "prismatic-4") {
      EXPECT_EQ(x.witness.size(), 4u);
    }
  }
}

TEST(Andreev, TriangularPrismFailsOnThreeBelt) {
  auto pm = load("triangular_prism.map");
  EXPECT_EQ(prismatic_circuits(pm, 3).size(), 1u);
  auto v = check_all(pm);
  EXPECT_TRUE(has(v, "prismatic-3"));
}

TEST(Andreev, PrismaticCircuitsExcludeVertexStars) {
  // Every triple of pairwise adjacent tetrahedron faces shares a vertex.
  EXPECT_TRUE(prismatic_circuits(load("tetrahedron.map"), 3).empty());
  EXPECT_TRUE(prismatic_circuits(load("dodecahedron.map"), 3).empty());
  EXPECT_TRUE(prismatic_circuits(load("dodecahedron.map"), 4).empty());
}

TEST(Andreev, EuclideanVertexIsRejected) {
  auto pm = load("dodecahedron.map");
  const auto& edges = pm.vertex_edges(0);
  for (int e : edges) pm.set_label(pm.edges()[e].first, pm.edges()[e].second, 3);
  auto v = check_all(pm);
  EXPECT_FALSE(v.pass);
  auto counts = condition_counts(v);
  EXPECT_EQ(counts["vertex"], 1);
  EXPECT_EQ(v.violations.front().witness, std::vector<int>{0});
  EXPECT_FALSE(v.vertex_types[0].has_value());
  EXPECT_EQ(*v.vertex_types[pm.edges()[edges[0]].second], CoxeterType::parse("A1+A2"));
}

TEST(Andreev, TetrahedronWarnsAndChecksVertices) {
  auto pm = load("tetrahedron.map");
  auto v = check_all(pm);
  EXPECT_TRUE(v.simplex_warning);
  for (int e = 0; e < pm.edge_count(); ++e) pm.set_label(pm.edges()[e].first, pm.edges()[e].second, 3);
  EXPECT_EQ(condition_counts(check_all(pm))["vertex"], 4);
}

TEST(Andreev, ForbiddenQuadrilateral) {
  auto v = check_all(load("flanked_quad.map"));
  auto counts = condition_counts(v);
  EXPECT_EQ(counts["forbidden-quad"], 1);
  EXPECT_EQ(v.violations.back().witness, std::vector<int>{2});
  EXPECT_TRUE(check_forbidden_quad(load("dodecahedron.map")).empty());
}

TEST(Andreev, VerdictsInvariantUnderRelabeling) {
  std::mt19937 rng(2024);
  for (const char* name : {"dodecahedron.map", "cube.map", "triangular_prism.map", "flanked_quad.map", "tetrahedron.map"}) {
    auto pm = load(name);
    auto base = check_all(pm);
    for (int trial = 0; trial < 20; ++trial) {
      auto v = check_all(relabel(pm, rng, trial % 2 == 1));
      EXPECT_EQ(v.pass, base.pass) << name;
      EXPECT_EQ(condition_counts(v), condition_counts(base)) << name;
    }
  }
}

TEST(Andreev, VertexConditionMatchesCatalogue) {
  for (int a = 2; a <= 100; ++a)
    for (int b = 2; b <= 100; ++b)
      for (int c = 2; c <= 100; ++c) ASSERT_EQ(spherical_triple(a, b, c), catalogue_triple(a, b, c)) << a << b << c;
  for (int a = 2; a <= 100; ++a)
    for (int b = a; b <= 100; ++b)
      for (int c = b; c <= 100; c += (c < 8 ? 1 : 23)) {
        ASSERT_EQ(spherical_triple(a, b, c), triple_type(a, b, c).finite());
        ASSERT_EQ(spherical_triple(a, b, c), triple_type(b, c, a).finite());
      }
}

TEST(Andreev, PluginConditionsRun) {
  AndreevCondition few_faces = [](const PlanarAngleMap& pm) {
    std::vector<Violation> out;
    if (pm.face_count() < 6) out.push_back({"few-faces", {}, "fewer than 6 faces"});
    return out;
  };
  auto v = check_all(load("tetrahedron.map"), {few_faces});
  EXPECT_TRUE(has(v, "few-faces"));
  EXPECT_TRUE(check_all(load("dodecahedron.map"), {few_faces}).pass);
}

TEST(Andreev, ParseErrors) {
  try {
    parse_map("vertices 4\nface 1 2 3\nfaec 1 2 4\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 1);
  }
  try {
    parse_map("vertices 4\nface 1 2 9\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 10);
  }
  EXPECT_THROW(parse_map("face 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_map("vertices 4\nface 1 2 3\nface 1 3 4\nface 1 4 2\nface 2 4 3\nedge 1 2 1\n"), ParseError);
  EXPECT_THROW(parse_map("vertices 4\nface 1 2 3\n"), MalformedMap);  // edges with one face
}
