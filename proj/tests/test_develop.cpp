#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "coxroll/andreev.hpp"
#include "coxroll/develop.hpp"

using namespace coxroll;

namespace {

constexpr double kPi = std::numbers::pi;

CoxeterMatrix chain(std::initializer_list<int> labels) {
  CoxeterMatrix m(static_cast<int>(labels.size()) + 1);
  int i = 0;
  for (int l : labels) {
    m.set_label(i, i + 1, l);
    ++i;
  }
  return m;
}

CoxeterMatrix cycle(std::initializer_list<int> labels) {
  const int n = static_cast<int>(labels.size());
  CoxeterMatrix m(n);
  int i = 0;
  for (int l : labels) {
    m.set_label(i, (i + 1) % n, l);
    ++i;
  }
  return m;
}

// Side of a triangle opposite the angle alpha, from the angles alone.
double side_from_angles(SpaceKind kind, double alpha, double beta, double gamma) {
  double c = (std::cos(alpha) + std::cos(beta) * std::cos(gamma)) / (std::sin(beta) * std::sin(gamma));
  return kind == SpaceKind::Spherical ? std::acos(c) : std::acosh(c);
}

// Side of a regular hyperbolic n-gon with the given interior angle, found by
// bisection on the circumradius in the hyperboloid model.
double regular_polygon_side(int n, double angle) {
  auto vertex = [&](double r, int i) {
    double t = 2 * kPi * i / n;
    return Eigen::Vector3d(std::sinh(r) * std::cos(t), std::sinh(r) * std::sin(t), std::cosh(r));
  };
  auto lorentz = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
  };
  auto interior = [&](double r) {
    Eigen::Vector3d p = vertex(r, 0), q = vertex(r, 1), o = vertex(r, n - 1);
    Eigen::Vector3d tq = q + lorentz(q, p) * p, to = o + lorentz(o, p) * p;
    return std::acos(lorentz(tq, to) / std::sqrt(lorentz(tq, tq) * lorentz(to, to)));
  };
  double lo = 1e-6, hi = 20.0;  // the angle shrinks as the polygon grows
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (interior(mid) > angle ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  return std::acosh(-lorentz(vertex(r, 0), vertex(r, 1)));
}

double tile_length(const DevelopedFigure& df, const Tile& t) {
  return df.chart.mirror.distance(t.vertices[0], t.vertices[1]);
}

void expect_walls_orthogonal(const DevelopedFigure& df) {
  const auto& u = df.chamber.normals[df.mirror_facet];
  for (const auto& w : df.walls) EXPECT_NEAR(df.chamber.space.inner(w.ambient_normal, u), 0.0, 1e-8);
}

void expect_tiles_glued(const DevelopedFigure& df) {
  const auto& ch = df.chamber;
  const auto& u = ch.normals[df.mirror_facet];
  for (const auto& t : df.tiles) {
    for (int v : ch.facet_vertices(t.facet))
      EXPECT_NEAR(ch.space.pair(u, t.position.point(ch.vertices[v])), 0.0, 1e-8);
    if (t.parent < 0) continue;
    const Tile& p = df.tiles[t.parent];
    for (int v : ch.hyperedge_vertices(p.facet, t.facet)) {
      auto at = [&](const Tile& x) {
        auto it = std::find(x.vertex_ids.begin(), x.vertex_ids.end(), v);
        return x.vertices[it - x.vertex_ids.begin()];
      };
      EXPECT_LT((at(p) - at(t)).norm(), 1e-7);
    }
  }
}

}  // namespace

TEST(Develop, A3RollsToAHalfCircle) {
  auto ch = realize_simplex(standard_scheme({Family::A, 3, 0}));
  auto df = roll_onto_mirror(ch, 0);
  ASSERT_EQ(df.tiles.size(), 3u);
  EXPECT_EQ(df.dimension(), 1);
  // Chamber angles: pi/3 at facets {0,1} and {1,2}, pi/2 at {0,2}.
  const double third = kPi / 3, right = kPi / 2;
  std::map<int, double> arc{{0, side_from_angles(SpaceKind::Spherical, third, third, right)},
                            {1, side_from_angles(SpaceKind::Spherical, right, third, third)},
                            {2, side_from_angles(SpaceKind::Spherical, third, third, right)}};
  for (const auto& t : df.tiles) EXPECT_NEAR(tile_length(df, t), arc[t.facet], 1e-9);
  auto pm = measure_polygon(df);
  EXPECT_NEAR(pm.length, kPi, 1e-9);
  expect_walls_orthogonal(df);
  expect_tiles_glued(df);
}

TEST(Develop, H3RollsToAQuadrant) {
  auto ch = realize_simplex(standard_scheme({Family::H, 3, 0}));
  auto df = roll_onto_mirror(ch, 0);
  ASSERT_EQ(df.tiles.size(), 3u);
  const double fifth = kPi / 5, third = kPi / 3, right = kPi / 2;
  // Facet i is opposite the vertex where the other two facets meet.
  std::map<int, double> arc{{0, side_from_angles(SpaceKind::Spherical, third, fifth, right)},
                            {1, side_from_angles(SpaceKind::Spherical, right, fifth, third)},
                            {2, side_from_angles(SpaceKind::Spherical, fifth, third, right)}};
  for (const auto& t : df.tiles) EXPECT_NEAR(tile_length(df, t), arc[t.facet], 1e-9);
  EXPECT_NEAR(measure_polygon(df).length, kPi / 2, 1e-9);
  expect_walls_orthogonal(df);
}

TEST(Develop, H4RollsToAnH3Triangle) {
  auto ch = realize_simplex(standard_scheme({Family::H, 4, 0}));
  auto df = roll_onto_mirror(ch, 0);
  EXPECT_EQ(df.tiles.size(), 4u);
  expect_walls_orthogonal(df);
  expect_tiles_glued(df);
  auto pm = measure_polygon(df);
  ASSERT_EQ(pm.angles.size(), 3u);
  auto angles = pm.angles;
  std::sort(angles.begin(), angles.end());
  EXPECT_NEAR(angles[0], kPi / 5, 1e-9);
  EXPECT_NEAR(angles[1], kPi / 3, 1e-9);
  EXPECT_NEAR(angles[2], kPi / 2, 1e-9);
  // Each side is determined by the angles of the triangle.
  for (size_t i = 0; i < 3; ++i) {
    double before = pm.angles[(i + 2) % 3], after = pm.angles[i], opposite = pm.angles[(i + 1) % 3];
    EXPECT_NEAR(pm.sides[i], side_from_angles(SpaceKind::Spherical, opposite, before, after), 1e-9);
  }
}

TEST(Develop, H4MeetingVariants) {
  auto df = roll_onto_mirror(realize_simplex(standard_scheme({Family::H, 4, 0})), 0);
  std::map<char, MeetingVariant> seen;
  for (const auto& bp : boundary_points(df)) {
    try {
      auto mv = classify_meeting(df, bp.point);
      seen[mv.tag] = mv;
    } catch (const DomainError&) {
    }
  }
  ASSERT_TRUE(seen.count('c'));
  const auto& c = seen['c'];
  // cos(arctan sqrt 2) = 1/sqrt 3: the angle between a cube diagonal and a face diagonal.
  for (double a : c.incidence) EXPECT_NEAR(a, std::acos(1 / std::sqrt(3.0)), 1e-8);
  double total = 0;
  for (double a : c.tile_angles) total += a;
  EXPECT_NEAR(total, kPi, 1e-9);
  ASSERT_TRUE(seen.count('d'));
  total = 0;
  for (double a : seen['d'].tile_angles) total += a;
  EXPECT_NEAR(total, kPi / 2, 1e-9);
}

TEST(Develop, FullDevelopmentCountsTiles) {
  auto h4 = standard_scheme({Family::H, 4, 0});
  auto ch = realize_simplex(h4);
  auto roll = roll_onto_mirror(ch, 0);
  auto full = full_development(ch, 0);
  EXPECT_FALSE(full.truncated);
  // The mirror is tiled by copies of the developed chamber, one per element of the induced group.
  EXPECT_EQ(full.tiles.size(), roll.tiles.size() * mirror_group_data(h4, 0).delta_order);
  EXPECT_THROW(measure_polygon(full), DomainError);

  auto octant = full_development(realize_simplex(CoxeterMatrix(3)), 0);
  ASSERT_EQ(octant.tiles.size(), 4u);
  double total = 0;
  for (const auto& t : octant.tiles) total += tile_length(octant, t);
  EXPECT_NEAR(total, 2 * kPi, 1e-9);
}

TEST(Develop, CyclicSchemesRepeatByADeckIsometry) {
  for (const auto& m : {cycle({3, 3, 3, 3, 3}), cycle({3, 3, 3, 5})}) {
    auto ch = realize_simplex(m);
    const int n = m.rank();
    auto df = roll_onto_mirror(ch, 0, 8 * n + 1);
    EXPECT_TRUE(df.truncated);
    EXPECT_THROW(measure_polygon(df), Truncated);
    expect_tiles_glued(df);
    std::vector<int> ray{0};
    while (true) {
      auto next = df.tree.children(ray.back());
      if (next.empty() || (ray.size() > 1 && next.size() != 1)) break;
      ray.push_back(next.front());
    }
    ASSERT_GT(ray.size(), static_cast<size_t>(2 * n));
    Eigen::MatrixXd deck = df.tiles[ray[n]].position.matrix * df.tiles[ray[0]].position.matrix.inverse();
    EXPECT_GT((deck - Eigen::MatrixXd::Identity(deck.rows(), deck.cols())).cwiseAbs().maxCoeff(), 1e-3);
    for (size_t d = 0; d + n < ray.size(); ++d) {
      Eigen::MatrixXd step = df.tiles[ray[d + n]].position.matrix * df.tiles[ray[d]].position.matrix.inverse();
      EXPECT_LT((step - deck).cwiseAbs().maxCoeff(), 1e-7);
    }
  }
}

TEST(Develop, NonCompactChambersDoNotRoll) {
  EXPECT_THROW(roll_onto_mirror(realize_simplex(chain({3, 3, 6})), 0), NotRealized);
}

TEST(Develop, TwoStageRightAngledDecagon) {
  auto r = two_stage(chain({5, 3, 3, 5}), 0, 0);
  EXPECT_EQ(r.middle.facet_count(), 5);
  EXPECT_EQ(r.middle.vertex_count(), 6);
  EXPECT_TRUE(r.middle.compact);
  EXPECT_TRUE(check_all(planar_map_from_chamber(r.middle)).pass);
  auto pm = measure_polygon(r.second);
  ASSERT_EQ(pm.sides.size(), 10u);
  const double side = regular_polygon_side(10, kPi / 2);
  EXPECT_NEAR(side, 2 * std::acosh(std::cos(kPi / 10) / std::sin(kPi / 4)), 1e-12);
  for (double a : pm.angles) EXPECT_NEAR(a, kPi / 2, 1e-6);
  for (double s : pm.sides) EXPECT_NEAR(s, side, 1e-6);
}

TEST(Develop, TwoStageRightAngledPentagon) {
  auto r = two_stage(chain({5, 3, 3, 3}), 0, 0);
  EXPECT_EQ(r.middle.facet_count(), 4);
  auto pm = measure_polygon(r.second);
  ASSERT_EQ(pm.sides.size(), 5u);
  const double side = regular_polygon_side(5, kPi / 2);
  for (double a : pm.angles) EXPECT_NEAR(a, kPi / 2, 1e-6);
  for (double s : pm.sides) EXPECT_NEAR(s, side, 1e-6);
}

TEST(Develop, RechamberMatchesInducedGroup) {
  // Developed chambers are chambers of the group generated by mirrors orthogonal to the mirror.
  auto h4 = standard_scheme({Family::H, 4, 0});
  auto df = roll_onto_mirror(realize_simplex(h4), 0);
  auto b = rechamber(df);
  EXPECT_EQ(classify(b.labels), mirror_group_data(h4, 0).delta_type);
}
