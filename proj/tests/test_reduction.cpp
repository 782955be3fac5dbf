#include <gtest/gtest.h>

#include "coxroll/reduction.hpp"

using namespace coxroll;

namespace {

CoxeterType T(const char* s) { return CoxeterType::parse(s); }

/// Positive root index of a simple root representing the requested orbit.
int representative(const Summand& s, MirrorOrbit orbit) {
  if (orbit == MirrorOrbit::Short) return s.rank - 1;
  return 0;
}

CoxeterType oracle(const Summand& s, MirrorOrbit orbit = MirrorOrbit::Single) {
  return oracle_reduce(standard_scheme(s), representative(s, orbit));
}

}  // namespace

TEST(Reduction, TableEntriesVerbatim) {
  EXPECT_EQ(table_reduce({Family::E, 8, 0}, MirrorOrbit::Single), T("E7"));
  EXPECT_EQ(table_reduce({Family::BC, 4, 0}, MirrorOrbit::Short), T("BC3"));
  EXPECT_EQ(table_reduce({Family::BC, 4, 0}, MirrorOrbit::Long), T("A1+A1+A1"));
  EXPECT_EQ(table_reduce({Family::H, 4, 0}, MirrorOrbit::Single), T("H3"));
  EXPECT_EQ(table_reduce({Family::A, 3, 0}, MirrorOrbit::Single), T("A1+R"));
  EXPECT_EQ(table_reduce({Family::G, 2, 7}, MirrorOrbit::Single), T("R"));
  EXPECT_EQ(table_reduce({Family::A, 1, 0}, MirrorOrbit::Single), CoxeterType{});
  EXPECT_THROW(table_reduce({Family::H, 3, 0}, MirrorOrbit::Long), InvalidOrbit);
  EXPECT_THROW(table_reduce({Family::F, 4, 0}, MirrorOrbit::Single), InvalidOrbit);
  EXPECT_THROW(table_reduce({Family::R, 1, 0}, MirrorOrbit::Single), DomainError);
}

TEST(Reduction, OracleExamples) {
  EXPECT_EQ(oracle({Family::A, 3, 0}), T("A1+R"));
  EXPECT_EQ(oracle({Family::H, 3, 0}), T("A1+A1"));
  EXPECT_EQ(oracle({Family::H, 4, 0}), T("H3"));
  EXPECT_EQ(oracle({Family::E, 6, 0}), T("A5"));
  EXPECT_EQ(oracle({Family::E, 7, 0}), T("D6"));
  EXPECT_EQ(oracle({Family::E, 8, 0}), T("E7"));
  EXPECT_EQ(oracle({Family::D, 6, 0}), T("A1+D4"));
  EXPECT_EQ(oracle({Family::F, 4, 0}, MirrorOrbit::Long), T("BC3"));
  EXPECT_EQ(oracle({Family::F, 4, 0}, MirrorOrbit::Short), T("BC3"));
  EXPECT_EQ(oracle({Family::G, 2, 6}, MirrorOrbit::Long), T("A1"));
  EXPECT_EQ(oracle({Family::G, 2, 6}, MirrorOrbit::Short), T("A1"));
  EXPECT_EQ(oracle({Family::G, 2, 9}), T("R"));
  EXPECT_EQ(oracle({Family::BC, 5, 0}, MirrorOrbit::Short), T("BC4"));
}

// The mirror of e1 + e2 in BC_n is orthogonal to e1 - e2 and to the BC_{n-2}
// system on the remaining coordinates.
TEST(Reduction, OracleLongOrbitOfBC) {
  EXPECT_EQ(oracle({Family::BC, 2, 0}, MirrorOrbit::Long), T("A1"));
  EXPECT_EQ(oracle({Family::BC, 3, 0}, MirrorOrbit::Long), T("A1+A1"));
  EXPECT_EQ(oracle({Family::BC, 4, 0}, MirrorOrbit::Long), T("A1+BC2"));
  EXPECT_EQ(oracle({Family::BC, 6, 0}, MirrorOrbit::Long), T("A1+BC4"));
}

TEST(Reduction, OracleIndependentOfRootWithinOrbit) {
  CoxeterMatrix m = standard_scheme({Family::F, 4, 0});
  RootSystem rs = generate_roots(m);
  for (int p = 0; p < rs.positive_count(); ++p) EXPECT_EQ(oracle_reduce(m, rs, p), T("BC3"));
}

TEST(Reduction, RankDropsByOne) {
  for (int n = 2; n <= 7; ++n) {
    CoxeterMatrix m = standard_scheme(make_summands(Family::A, n).front());
    EXPECT_EQ(oracle_reduce(m, 0).rank(), n - 1);
  }
}

TEST(Reduction, ReducibleCommutesWithSums) {
  // H3 on generators 0..2, A2 on generators 3..4.
  CoxeterMatrix m(5);
  m.set_label(0, 1, 5);
  m.set_label(1, 2, 3);
  m.set_label(3, 4, 3);
  RootSystem rs = generate_roots(m);
  EXPECT_EQ(oracle_reduce(m, rs, 0), T("A1+A1+A2"));
  EXPECT_EQ(oracle_reduce(m, rs, 3), T("H3+R"));
  EXPECT_EQ(table_reduce_matrix(m, rs, 0).result, T("A1+A1+A2"));
  EXPECT_EQ(table_reduce_matrix(m, rs, 3).result, T("H3+R"));
}

TEST(Reduction, LocateRootNamesOrbits) {
  CoxeterMatrix m = standard_scheme({Family::BC, 3, 0});
  RootSystem rs = generate_roots(m);
  EXPECT_EQ(locate_root(m, rs, 0).orbit, MirrorOrbit::Long);
  EXPECT_EQ(locate_root(m, rs, 2).orbit, MirrorOrbit::Short);
  // Reversed diagram: the label-4 edge now sits at generators 0-1.
  CoxeterMatrix r(3);
  r.set_label(0, 1, 4);
  r.set_label(1, 2, 3);
  RootSystem rr = generate_roots(r);
  EXPECT_EQ(locate_root(r, rr, 0).orbit, MirrorOrbit::Short);
  EXPECT_EQ(locate_root(r, rr, 2).orbit, MirrorOrbit::Long);
}

TEST(Reduction, EquipmentOfHyperbolicSimplex) {
  CoxeterMatrix m = parse_scheme("rank 5\n1 2 5\n2 3 3\n3 4 3\n4 5 3\n");
  Equipment eq = equipment_of(m);
  std::vector<int> a{0, 1, 2, 3};
  ASSERT_NE(eq.find(a), nullptr);
  EXPECT_EQ(eq.find(a)->type, T("H4"));
  EXPECT_EQ(eq.find(std::vector<int>{0, 1, 2, 3, 4}), nullptr);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(eq.find(std::vector<int>{i})->type, T("A1"));
  EXPECT_EQ(equipment_reduce(m, a, 0), T("H3"));
  EXPECT_EQ(equipment_reduce(m, std::vector<int>{0, 1, 2}, 1), T("A1+A1"));
  EXPECT_EQ(equipment_reduce(m, std::vector<int>{2, 3, 4}, 3), T("A1+R"));
  EXPECT_THROW(equipment_reduce(m, std::vector<int>{0, 1, 2, 3, 4}, 0), NotFinite);
  EXPECT_THROW(equipment_reduce(m, a, 4), DomainError);
}

TEST(Reduction, EquipmentExcludesInfinitePairs) {
  CoxeterMatrix m(3);
  m.set_label(0, 1, kInfinity);
  Equipment eq = equipment_of(m);
  EXPECT_EQ(eq.find(std::vector<int>{0, 1}), nullptr);
  EXPECT_NE(eq.find(std::vector<int>{0, 2}), nullptr);
}

TEST(Reduction, EquipmentIsMonotone) {
  Equipment eq = equipment_of(parse_scheme("rank 5\n1 2 5\n2 3 3\n3 4 3\n4 5 3\n"));
  for (const auto& big : eq.strata)
    for (const auto& small : eq.strata) {
      if (!std::includes(big.generators.begin(), big.generators.end(), small.generators.begin(),
                         small.generators.end()))
        continue;
      EXPECT_LE(small.type.rank(), big.type.rank());
      EXPECT_EQ(group_order(big.type) % group_order(small.type), 0u);
    }
}
