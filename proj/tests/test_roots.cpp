#include <gtest/gtest.h>

#include "coxroll/roots.hpp"

using namespace coxroll;

namespace {

int mirror_count(const Summand& s) { return generate_roots(standard_scheme(s)).positive_count(); }

}  // namespace

TEST(Roots, PositiveRootCounts) {
  // Number of reflections = rank * Coxeter number / 2.
  EXPECT_EQ(mirror_count({Family::A, 3, 0}), 6);
  EXPECT_EQ(mirror_count({Family::BC, 4, 0}), 16);
  EXPECT_EQ(mirror_count({Family::D, 5, 0}), 20);
  EXPECT_EQ(mirror_count({Family::E, 6, 0}), 36);
  EXPECT_EQ(mirror_count({Family::E, 7, 0}), 63);
  EXPECT_EQ(mirror_count({Family::E, 8, 0}), 120);
  EXPECT_EQ(mirror_count({Family::F, 4, 0}), 24);
  EXPECT_EQ(mirror_count({Family::G, 2, 7}), 7);
  EXPECT_EQ(mirror_count({Family::H, 3, 0}), 15);
  EXPECT_EQ(mirror_count({Family::H, 4, 0}), 60);
}

TEST(Roots, RootsAreUnitAndClosed) {
  RootSystem rs = generate_roots(standard_scheme({Family::H, 4, 0}));
  for (const auto& r : rs.roots()) EXPECT_NEAR(rs.inner(r.coords, r.coords), 1.0, 1e-9);
  for (int i = 0; i < rs.rank(); ++i)
    for (const auto& r : rs.roots())
      EXPECT_TRUE(rs.find(rs.reflect(Eigen::VectorXd::Unit(rs.rank(), i), r.coords)).has_value());
}

TEST(Roots, OrbitsSplitLongAndShort) {
  RootSystem bc = generate_roots(standard_scheme({Family::BC, 3, 0}));
  EXPECT_EQ(bc.orbit_ids().size(), 2u);
  EXPECT_EQ(bc.orbit_size(0), 6);  // e_i +- e_j
  EXPECT_EQ(bc.orbit_size(2), 3);  // e_i
  RootSystem h4 = generate_roots(standard_scheme({Family::H, 4, 0}));
  EXPECT_EQ(h4.orbit_ids().size(), 1u);
  RootSystem g6 = generate_roots(standard_scheme({Family::G, 2, 6}));
  EXPECT_EQ(g6.orbit_size(0), 3);
  EXPECT_EQ(g6.orbit_size(1), 3);
}

TEST(Roots, InfiniteTypesRejected) {
  CoxeterMatrix m(3);
  m.set_label(0, 1, 3);
  m.set_label(1, 2, 3);
  m.set_label(0, 2, 3);
  EXPECT_THROW(generate_roots(m), NotFinite);
}

TEST(Roots, LabelRecovery) {
  for (int m = 2; m <= 50; ++m) EXPECT_EQ(label_from_inner_product(-std::cos(std::numbers::pi / m)), m);
  EXPECT_THROW(label_from_inner_product(0.3), AngleUnrecognized);
}

TEST(Roots, EveryRankThreeSystemHasOrthogonalMirrors) {
  for (Summand s : {Summand{Family::A, 3, 0}, Summand{Family::BC, 3, 0}, Summand{Family::H, 3, 0}}) {
    RootSystem rs = generate_roots(standard_scheme(s));
    for (int k = 0; k < rs.positive_count(); ++k) EXPECT_FALSE(orthogonal_set(rs, k).empty()) << s.name();
  }
}

TEST(Roots, SimpleSystemOfWholeSystemIsSimpleRoots) {
  RootSystem rs = generate_roots(standard_scheme({Family::E, 6, 0}));
  std::vector<int> all(static_cast<size_t>(rs.positive_count()));
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(simple_system(rs, all), (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(subsystem_type(rs, all, 6).str(), "E6");
}
