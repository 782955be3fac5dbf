#pragma once

// Mirror reduction: the reflection group induced on a mirror by all mirrors
// orthogonal to it. The reduction table is kept as data and the root-system
// computation is the independent check against it.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "coxroll/error.hpp"
#include "coxroll/roots.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

/// Conjugacy class of a mirror inside an irreducible finite group. Only BC_n,
/// F4 and the even dihedral groups have two classes ("long"/"short").
enum class MirrorOrbit { Single, Long, Short };

inline std::string to_string(MirrorOrbit o) {
  switch (o) {
    case MirrorOrbit::Single: return "single";
    case MirrorOrbit::Long: return "long";
    case MirrorOrbit::Short: return "short";
  }
  return "?";
}

inline bool has_two_mirror_orbits(const Summand& t) {
  return t.family == Family::BC || t.family == Family::F || (t.family == Family::G && t.m % 2 == 0);
}

inline std::vector<MirrorOrbit> valid_orbits(const Summand& t) {
  if (has_two_mirror_orbits(t)) return {MirrorOrbit::Long, MirrorOrbit::Short};
  return {MirrorOrbit::Single};
}

struct ReductionResult {
  CoxeterType source;
  MirrorOrbit orbit = MirrorOrbit::Single;
  CoxeterType result;
};

/// The reduction table, entry by entry. A1 (not listed) reduces to the empty
/// group on a point.
inline CoxeterType table_reduce(const Summand& t, MirrorOrbit orbit) {
  if (!t.finite() || t.family == Family::R) throw DomainError("not an irreducible finite type: " + t.name());
  auto valid = valid_orbits(t);
  if (std::find(valid.begin(), valid.end(), orbit) == valid.end())
    throw InvalidOrbit("orbit '" + to_string(orbit) + "' is not valid for " + t.name());
  using F = Family;
  const int n = t.rank;
  const auto R = CoxeterType::of(F::R, 1);
  const auto A1 = CoxeterType::of(F::A, 1);
  switch (t.family) {
    case F::A:
      if (n == 1) return CoxeterType{};
      return CoxeterType::of(F::A, n - 2) + R;
    case F::BC:
      if (orbit == MirrorOrbit::Long) return A1 + CoxeterType::of(F::D, n - 2);
      return CoxeterType::of(F::BC, n - 1);
    case F::D:
      return A1 + CoxeterType::of(F::D, n - 2);
    case F::E:
      if (n == 6) return CoxeterType::of(F::A, 5);
      if (n == 7) return CoxeterType::of(F::D, 6);
      return CoxeterType::of(F::E, 7);
    case F::F:
      return CoxeterType::of(F::BC, 3);
    case F::G:
      return t.m % 2 == 0 ? A1 : R;
    case F::H:
      if (n == 3) return A1 + A1;
      return CoxeterType::of(F::H, 3);
    default:
      break;
  }
  throw DomainError("type not in the reduction table: " + t.name());
}

/// Component of `m` containing the support of positive root `root`, and the
/// name of the root's mirror orbit within it.
struct RootLocation {
  ComponentClass component;
  MirrorOrbit orbit = MirrorOrbit::Single;
};

inline RootLocation locate_root(const CoxeterMatrix& m, const RootSystem& rs, int root) {
  if (root < 0 || root >= rs.positive_count()) throw DomainError("root index out of range");
  int orbit = rs.orbit_of(root);  // a simple-root index
  for (auto& cc : classify_components(m)) {
    if (std::find(cc.nodes.begin(), cc.nodes.end(), orbit) == cc.nodes.end()) continue;
    RootLocation loc{cc, MirrorOrbit::Single};
    const Summand& t = cc.type;
    if (has_two_mirror_orbits(t)) {
      // Diagram order: BC_n ends with the label-4 edge, so its last node is
      // short; F4 is 3-4-3 with nodes 3,4 short; dihedral: node 2 short.
      int short_rep = t.family == Family::F ? cc.nodes[3] : cc.nodes.back();
      loc.orbit = rs.orbit_of(short_rep) == orbit ? MirrorOrbit::Short : MirrorOrbit::Long;
    }
    return loc;
  }
  throw InternalError("root support not found in any component");
}

/// Root-system route: roots orthogonal to `root`, their simple system and its
/// type, padded with R factors to rank - 1.
inline CoxeterType oracle_reduce(const CoxeterMatrix& m, const RootSystem& rs, int root) {
  auto perp = orthogonal_set(rs, root);
  return subsystem_type(rs, perp, m.rank() - 1);
}

inline CoxeterType oracle_reduce(const CoxeterMatrix& m, int root) {
  return oracle_reduce(m, generate_roots(m), root);
}

/// Table route for a possibly reducible matrix: the component holding the
/// mirror is reduced by table, the other components are carried unchanged.
inline ReductionResult table_reduce_matrix(const CoxeterMatrix& m, const RootSystem& rs, int root) {
  RootLocation loc = locate_root(m, rs, root);
  ReductionResult out{classify(m), loc.orbit, table_reduce(loc.component.type, loc.orbit)};
  for (const auto& cc : classify_components(m))
    if (cc.nodes != loc.component.nodes) out.result = out.result + CoxeterType({cc.type});
  return out;
}

// ---------------------------------------------------------------------------
// Equipment

struct Stratum {
  std::vector<int> generators;  // sorted
  CoxeterType type;
};

/// All generator subsets generating a finite group, with their types; strata
/// are ordered by size and then lexicographically.
struct Equipment {
  CoxeterMatrix scheme;
  std::vector<Stratum> strata;

  const Stratum* find(std::span<const int> generators) const {
    std::vector<int> key(generators.begin(), generators.end());
    std::sort(key.begin(), key.end());
    for (const auto& s : strata)
      if (s.generators == key) return &s;
    return nullptr;
  }
};

inline Equipment equipment_of(const CoxeterMatrix& m) {
  const int n = m.rank();
  if (n > 24) throw DomainError("equipment enumeration is limited to rank 24");
  Equipment eq{m, {}};
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<int> gens;
    for (int i = 0; i < n; ++i)
      if (mask & (1ul << i)) gens.push_back(i);
    CoxeterType t = classify(m.principal(gens));
    if (t.finite()) eq.strata.push_back({std::move(gens), std::move(t)});
  }
  std::sort(eq.strata.begin(), eq.strata.end(), [](const Stratum& a, const Stratum& b) {
    return a.generators.size() != b.generators.size() ? a.generators.size() < b.generators.size()
                                                      : a.generators < b.generators;
  });
  return eq;
}

/// Reduction of the stratum group on S at the mirror of generator k in S.
inline CoxeterType equipment_reduce(const CoxeterMatrix& m, std::span<const int> stratum, int k) {
  std::vector<int> gens(stratum.begin(), stratum.end());
  std::sort(gens.begin(), gens.end());
  auto it = std::find(gens.begin(), gens.end(), k);
  if (it == gens.end()) throw DomainError("generator is not in the stratum");
  CoxeterMatrix sub = m.principal(gens);
  CoxeterType t = classify(sub);
  if (!t.finite()) throw NotFinite(t.str());
  return oracle_reduce(sub, static_cast<int>(it - gens.begin()));
}

}  // namespace coxroll
