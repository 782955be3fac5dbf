#pragma once

// Finite root systems generated from a Coxeter matrix. All simple roots have
// unit length under the cosine form, so the non-crystallographic types use a
// single length class and every root is a unit normal of some mirror.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "coxroll/error.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

inline constexpr double kRootTolerance = 1e-8;
inline constexpr std::size_t kRootCap = 100000;

struct Root {
  Eigen::VectorXd coords;  // in the simple-root basis
  bool positive = false;
};

class RootSystem {
 public:
  RootSystem(Eigen::MatrixXd form, std::vector<Root> roots, double tolerance)
      : form_(std::move(form)), roots_(std::move(roots)), tolerance_(tolerance) {
    positive_count_ = static_cast<int>(roots_.size() / 2);
    build_orbits();
  }

  int rank() const { return static_cast<int>(form_.rows()); }
  const Eigen::MatrixXd& form() const { return form_; }
  double tolerance() const { return tolerance_; }

  /// Positive roots occupy [0, positive_count()); root positive_count()+i is
  /// the negative of root i. The simple roots are indices 0..rank()-1.
  const std::vector<Root>& roots() const { return roots_; }
  int size() const { return static_cast<int>(roots_.size()); }
  int positive_count() const { return positive_count_; }
  const Root& root(int i) const { return roots_.at(static_cast<size_t>(i)); }

  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(form_ * b); }

  /// s_v(w) = w - 2<v,w>v for a unit root v.
  Eigen::VectorXd reflect(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
    return w - 2.0 * inner(v, w) * v;
  }

  /// Nearest root within the matching tolerance, measured in the form metric.
  std::optional<int> find(const Eigen::VectorXd& w) const { return find_in(roots_, w); }

  /// Index of the positive root spanning the same mirror as w.
  std::optional<int> find_mirror(const Eigen::VectorXd& w) const {
    auto idx = find(w);
    if (!idx) return std::nullopt;
    return *idx % positive_count_;
  }

  /// Orbit id of a positive root under the group: the smallest simple-root
  /// index in the same orbit.
  int orbit_of(int positive_index) const { return orbit_.at(static_cast<size_t>(positive_index)); }

  int orbit_size(int positive_index) const {
    int id = orbit_of(positive_index);
    return static_cast<int>(std::count(orbit_.begin(), orbit_.end(), id));
  }

  /// Distinct orbit ids in increasing order.
  std::vector<int> orbit_ids() const {
    std::vector<int> ids(orbit_.begin(), orbit_.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  static std::optional<int> find_in(const std::vector<Root>& pool, const Eigen::VectorXd& w,
                                    const Eigen::MatrixXd& form, double tol) {
    for (size_t i = 0; i < pool.size(); ++i) {
      Eigen::VectorXd d = pool[i].coords - w;
      double dist2 = d.dot(form * d);
      if (dist2 <= tol * tol) return static_cast<int>(i);
    }
    return std::nullopt;
  }

 private:
  std::optional<int> find_in(const std::vector<Root>& pool, const Eigen::VectorXd& w) const {
    return find_in(pool, w, form_, tolerance_);
  }

  void build_orbits() {
    std::vector<int> parent(static_cast<size_t>(positive_count_));
    std::iota(parent.begin(), parent.end(), 0);
    auto root_of = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    Eigen::VectorXd e;
    for (int p = 0; p < positive_count_; ++p) {
      for (int i = 0; i < rank(); ++i) {
        e = Eigen::VectorXd::Unit(rank(), i);
        auto q = find_mirror(reflect(e, roots_[p].coords));
        if (!q) throw InternalError("root system not closed under a simple reflection");
        int a = root_of(p), b = root_of(*q);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    orbit_.resize(static_cast<size_t>(positive_count_));
    for (int p = 0; p < positive_count_; ++p) orbit_[p] = root_of(p);
    // Union by minimum index keeps each orbit labelled by its smallest member,
    // which is a simple root because simple roots come first.
  }

  Eigen::MatrixXd form_;
  std::vector<Root> roots_;
  double tolerance_;
  int positive_count_ = 0;
  std::vector<int> orbit_;
};

namespace detail {

inline bool is_positive_coords(const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > 1e-9) return true;
    if (v[i] < -1e-9) return false;
  }
  return false;
}

}  // namespace detail

/// Orbit of the simple roots under the simple reflections, closed
/// breadth-first with nearest-point deduplication.
inline RootSystem generate_roots(const CoxeterMatrix& m, double tol = kRootTolerance) {
  CoxeterType type = classify(m);
  if (!type.finite()) throw NotFinite(type.str());
  const int n = m.rank();
  Eigen::MatrixXd form = m.cosine_matrix();

  std::vector<Root> found;
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    found.push_back({Eigen::VectorXd::Unit(n, i), true});
    queue.push_back(i);
  }
  while (!queue.empty()) {
    Eigen::VectorXd w = found[static_cast<size_t>(queue.front())].coords;
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd r = w - 2.0 * (form.row(i).dot(w)) * Eigen::VectorXd::Unit(n, i);
      if (RootSystem::find_in(found, r, form, tol)) continue;
      if (found.size() >= kRootCap) throw NonClosure("root closure exceeded the safety cap");
      found.push_back({r, detail::is_positive_coords(r)});
      queue.push_back(static_cast<int>(found.size()) - 1);
    }
  }

  std::vector<Root> positives;
  for (const auto& r : found)
    if (r.positive) positives.push_back(r);
  if (positives.size() * 2 != found.size())
    throw InternalError("root system is not closed under negation");
  std::vector<Root> ordered = positives;
  for (const auto& r : positives) ordered.push_back({-r.coords, false});
  for (const auto& r : found)
    if (!RootSystem::find_in(ordered, r.coords, form, tol))
      throw InternalError("root system is not closed under negation");
  return RootSystem(std::move(form), std::move(ordered), tol);
}

/// Positive roots orthogonal to positive root k.
inline std::vector<int> orthogonal_set(const RootSystem& rs, int k) {
  if (k < 0 || k >= rs.positive_count()) throw DomainError("root index out of range");
  std::vector<int> out;
  const auto& v = rs.root(k).coords;
  for (int i = 0; i < rs.positive_count(); ++i)
    if (i != k && std::abs(rs.inner(rs.root(i).coords, v)) <= rs.tolerance()) out.push_back(i);
  return out;
}

/// Indecomposable elements of a positive subsystem: a root is dropped when it
/// equals s_g(b) + 2<b,g> g for some other g in the subset with <b,g> > 0 and
/// s_g(b) again a positive root of the subset.
inline std::vector<int> simple_system(const RootSystem& rs, std::span<const int> subset) {
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  for (int b : sorted) {
    const auto& beta = rs.root(b).coords;
    bool decomposable = false;
    for (int g : sorted) {
      if (g == b) continue;
      const auto& gamma = rs.root(g).coords;
      double c = rs.inner(beta, gamma);
      if (c <= rs.tolerance()) continue;
      auto image = rs.find(rs.reflect(gamma, beta));
      if (!image || *image >= rs.positive_count()) continue;
      if (!std::binary_search(sorted.begin(), sorted.end(), *image)) continue;
      decomposable = true;
      break;
    }
    if (!decomposable) out.push_back(b);
  }
  return out;
}

/// Recovers m from <a,b> = -cos(pi/m) by nearest match over 2 <= m <= 1000.
inline int label_from_inner_product(double c) {
  int best = 0;
  double best_err = 1e300;
  for (int m = 2; m <= 1000; ++m) {
    double err = std::abs(c + std::cos(std::numbers::pi / m));
    if (err < best_err) {
      best_err = err;
      best = m;
    }
  }
  if (best_err > 1e-6) throw AngleUnrecognized("no label m <= 1000 matches inner product " + std::to_string(c));
  return best;
}

/// Type of the reflection subgroup generated by `subset`, padded with R
/// factors up to `target_rank` (default rank - 1, the mirror dimension count).
inline CoxeterType subsystem_type(const RootSystem& rs, std::span<const int> subset, int target_rank = -1) {
  if (target_rank < 0) target_rank = rs.rank() - 1;
  std::vector<int> simple = simple_system(rs, subset);
  const int k = static_cast<int>(simple.size());
  if (k > target_rank) throw InternalError("subsystem rank exceeds the target rank");
  CoxeterType type;
  if (k > 0) {
    CoxeterMatrix sub(k);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        sub.set_label(a, b, label_from_inner_product(rs.inner(rs.root(simple[a]).coords, rs.root(simple[b]).coords)));
    type = classify(sub);
  }
  return type + CoxeterType::of(Family::R, target_rank - k);
}

}  // namespace coxroll
