#pragma once

// Coxeter matrices, their scheme graphs, and classification of the
// irreducible pieces against the finite catalogue.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coxroll/error.hpp"

namespace coxroll {

/// Label value used for m_ij = infinity.
inline constexpr int kInfinity = 0;

inline bool is_infinite_label(int m) { return m == kInfinity; }
/// A pair is drawn as an edge of the scheme iff m >= 3 or m = infinity.
inline bool is_scheme_edge(int m) { return m == kInfinity || m >= 3; }
inline bool is_odd_label(int m) { return m != kInfinity && m % 2 == 1; }

/// Entry of the cosine (Gram) matrix for a label: -cos(pi/m), and -1 for infinity.
inline double cosine_entry(int m) {
  if (m == kInfinity) return -1.0;
  if (m == 1) return 1.0;
  return -std::cos(std::numbers::pi / m);
}

inline std::string label_string(int m) { return m == kInfinity ? "inf" : std::to_string(m); }

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  explicit CoxeterMatrix(int rank) : rank_(rank), entries_(static_cast<size_t>(rank) * rank, 2) {
    if (rank < 1) throw DomainError("Coxeter matrix rank must be positive");
    for (int i = 0; i < rank; ++i) entries_[index(i, i)] = 1;
  }

  int rank() const { return rank_; }

  /// 0-based access; returns kInfinity for an infinite label.
  int label(int i, int j) const { return entries_[index(i, j)]; }

  void set_label(int i, int j, int m) {
    if (i == j) throw DomainError("diagonal labels are fixed at 1");
    if (i < 0 || j < 0 || i >= rank_ || j >= rank_) throw DomainError("generator index out of range");
    if (m != kInfinity && m < 2) throw DomainError("label must be >= 2 or infinity");
    entries_[index(i, j)] = m;
    entries_[index(j, i)] = m;
  }

  /// Principal submatrix on the given generators, in the given order.
  CoxeterMatrix principal(std::span<const int> nodes) const {
    CoxeterMatrix sub(static_cast<int>(nodes.size()));
    for (size_t a = 0; a < nodes.size(); ++a)
      for (size_t b = a + 1; b < nodes.size(); ++b)
        sub.set_label(static_cast<int>(a), static_cast<int>(b), label(nodes[a], nodes[b]));
    return sub;
  }

  Eigen::MatrixXd cosine_matrix() const {
    Eigen::MatrixXd g(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) g(i, j) = cosine_entry(label(i, j));
    return g;
  }

  /// Same matrix with generators renumbered: result.label(perm[i], perm[j]) = label(i, j).
  CoxeterMatrix permuted(std::span<const int> perm) const {
    CoxeterMatrix out(rank_);
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j) out.set_label(perm[i], perm[j], label(i, j));
    return out;
  }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * rank_ + j; }

  int rank_ = 0;
  std::vector<int> entries_;
};

struct SchemeEdge {
  int i;
  int j;
  int label;
  friend bool operator==(const SchemeEdge&, const SchemeEdge&) = default;
};

/// Coxeter scheme: generators as nodes, an edge for every pair with m_ij >= 3.
struct SchemeGraph {
  int node_count = 0;
  std::vector<SchemeEdge> edges;  // i < j, lexicographic

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(node_count);
    for (const auto& e : edges) {
      adj[e.i].push_back(e.j);
      adj[e.j].push_back(e.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }
};

inline SchemeGraph scheme_graph(const CoxeterMatrix& m) {
  SchemeGraph g{m.rank(), {}};
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j)
      if (is_scheme_edge(m.label(i, j))) g.edges.push_back({i, j, m.label(i, j)});
  return g;
}

// ---------------------------------------------------------------------------
// Types

enum class Family { A, BC, D, E, F, G, H, R, Euclidean, Other };

/// One irreducible summand. `m` is only meaningful for the dihedral family G.
struct Summand {
  Family family = Family::A;
  int rank = 1;
  int m = 0;

  bool finite() const { return family != Family::Euclidean && family != Family::Other; }

  std::string name() const {
    switch (family) {
      case Family::A: return "A" + std::to_string(rank);
      case Family::BC: return "BC" + std::to_string(rank);
      case Family::D: return "D" + std::to_string(rank);
      case Family::E: return "E" + std::to_string(rank);
      case Family::F: return "F4";
      case Family::G: return "G2(" + std::to_string(m) + ")";
      case Family::H: return "H" + std::to_string(rank);
      case Family::R: return "R";
      case Family::Euclidean: return "Euclidean(" + std::to_string(rank) + ")";
      case Family::Other: return "Other(" + std::to_string(rank) + ")";
    }
    return "?";
  }

  friend auto operator<=>(const Summand&, const Summand&) = default;
};

/// Canonical summands for a (family, rank, m) triple, folding the low-rank
/// coincidences: A0 = BC0 = D0 = empty, BC1 = A1, D1 = R, D2 = A1+A1, D3 = A3,
/// G2(2) = A1+A1, G2(3) = A2, G2(4) = BC2, H1 = A1, H2 = G2(5).
inline std::vector<Summand> make_summands(Family family, int rank, int m = 0) {
  using F = Family;
  if (rank < 0) throw DomainError("negative rank");
  switch (family) {
    case F::A:
      if (rank == 0) return {};
      return {{F::A, rank, 0}};
    case F::BC:
      if (rank == 0) return {};
      if (rank == 1) return {{F::A, 1, 0}};
      return {{F::BC, rank, 0}};
    case F::D:
      if (rank == 0) return {};
      if (rank == 1) return {{F::R, 1, 0}};
      if (rank == 2) return {{F::A, 1, 0}, {F::A, 1, 0}};
      if (rank == 3) return {{F::A, 3, 0}};
      return {{F::D, rank, 0}};
    case F::E:
      if (rank < 6 || rank > 8) throw DomainError("E family has ranks 6..8");
      return {{F::E, rank, 0}};
    case F::F:
      return {{F::F, 4, 0}};
    case F::G:
      if (m == 2) return {{F::A, 1, 0}, {F::A, 1, 0}};
      if (m == 3) return {{F::A, 2, 0}};
      if (m == 4) return {{F::BC, 2, 0}};
      if (m < 2) throw DomainError("dihedral label must be >= 2");
      return {{F::G, 2, m}};
    case F::H:
      if (rank == 1) return {{F::A, 1, 0}};
      if (rank == 2) return {{F::G, 2, 5}};
      if (rank != 3 && rank != 4) throw DomainError("H family has ranks 3 and 4");
      return {{F::H, rank, 0}};
    case F::R:
      return std::vector<Summand>(static_cast<size_t>(rank), Summand{F::R, 1, 0});
    case F::Euclidean:
    case F::Other:
      return {{family, rank, 0}};
  }
  return {};
}

/// Direct sum of irreducible summands, kept in canonical (sorted) order.
class CoxeterType {
 public:
  CoxeterType() = default;
  explicit CoxeterType(std::vector<Summand> summands) : summands_(std::move(summands)) {
    std::sort(summands_.begin(), summands_.end());
  }

  static CoxeterType of(Family family, int rank, int m = 0) {
    return CoxeterType(make_summands(family, rank, m));
  }

  /// Parses strings such as "A1+D2", "H3", "G2(5)", "R" (empty string = empty sum).
  static CoxeterType parse(std::string_view text) {
    CoxeterType out;
    std::string s(text);
    size_t pos = 0;
    while (pos < s.size()) {
      size_t next = s.find('+', pos);
      std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      pos = next == std::string::npos ? s.size() : next + 1;
      if (tok.empty()) throw DomainError("empty summand in type string");
      auto number_after = [&](size_t at) { return std::stoi(tok.substr(at)); };
      if (tok == "R") {
        out = out + of(Family::R, 1);
      } else if (tok.rfind("BC", 0) == 0) {
        out = out + of(Family::BC, number_after(2));
      } else if (tok.rfind("G2(", 0) == 0) {
        out = out + of(Family::G, 2, std::stoi(tok.substr(3)));
      } else if (tok.rfind("Euclidean(", 0) == 0) {
        out = out + of(Family::Euclidean, std::stoi(tok.substr(10)));
      } else if (tok.rfind("Other(", 0) == 0) {
        out = out + of(Family::Other, std::stoi(tok.substr(6)));
      } else if (tok.size() >= 2) {
        int r = number_after(1);
        switch (tok[0]) {
          case 'A': out = out + of(Family::A, r); break;
          case 'D': out = out + of(Family::D, r); break;
          case 'E': out = out + of(Family::E, r); break;
          case 'F': out = out + of(Family::F, r); break;
          case 'H': out = out + of(Family::H, r); break;
          default: throw DomainError("unknown type token: " + tok);
        }
      } else {
        throw DomainError("unknown type token: " + tok);
      }
    }
    return out;
  }

  const std::vector<Summand>& summands() const { return summands_; }
  bool empty() const { return summands_.empty(); }

  bool finite() const {
    return std::all_of(summands_.begin(), summands_.end(), [](const Summand& s) { return s.finite(); });
  }

  bool irreducible() const { return summands_.size() == 1; }

  /// Rank counting R factors.
  int rank() const {
    int r = 0;
    for (const auto& s : summands_) r += s.rank;
    return r;
  }

  int r_factor_count() const {
    return static_cast<int>(std::count_if(summands_.begin(), summands_.end(),
                                          [](const Summand& s) { return s.family == Family::R; }));
  }

  std::string str() const {
    if (summands_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < summands_.size(); ++i) {
      if (i) out += "+";
      out += summands_[i].name();
    }
    return out;
  }

  friend CoxeterType operator+(const CoxeterType& a, const CoxeterType& b) {
    std::vector<Summand> all = a.summands_;
    all.insert(all.end(), b.summands_.begin(), b.summands_.end());
    return CoxeterType(std::move(all));
  }

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;

 private:
  std::vector<Summand> summands_;
};

/// Order of a finite irreducible summand (R contributes 1).
inline std::uint64_t group_order(const Summand& s) {
  auto factorial = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  switch (s.family) {
    case Family::A: return factorial(s.rank + 1);
    case Family::BC: return (std::uint64_t{1} << s.rank) * factorial(s.rank);
    case Family::D: return (std::uint64_t{1} << (s.rank - 1)) * factorial(s.rank);
    case Family::E:
      if (s.rank == 6) return 51840;
      if (s.rank == 7) return 2903040;
      return 696729600;
    case Family::F: return 1152;
    case Family::G: return 2 * static_cast<std::uint64_t>(s.m);
    case Family::H: return s.rank == 3 ? 120 : 14400;
    case Family::R: return 1;
    case Family::Euclidean:
    case Family::Other: break;
  }
  throw NotFinite(s.name());
}

inline std::uint64_t group_order(const CoxeterType& t) {
  std::uint64_t order = 1;
  for (const auto& s : t.summands()) order *= group_order(s);
  return order;
}

// ---------------------------------------------------------------------------
// Parsing and serialization

/// Reads the scheme file format: `rank N`, then `i j m` lines (1-based, m an
/// integer or `inf`); `#` starts a comment; omitted pairs default to 2.
inline CoxeterMatrix parse_scheme(std::string_view text) {
  std::optional<CoxeterMatrix> result;
  std::map<std::pair<int, int>, int> declared;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    struct Token {
      std::string text;
      int column;
    };
    std::vector<Token> tokens;
    for (size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (tokens.empty()) continue;

    auto to_int = [&](const Token& t) {
      if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
          }))
        throw ParseError("expected an integer, got '" + t.text + "'", line_no, t.column);
      try {
        return std::stoi(t.text);
      } catch (const std::exception&) {
        throw ParseError("integer out of range: '" + t.text + "'", line_no, t.column);
      }
    };

    if (!result) {
      if (tokens[0].text != "rank" || tokens.size() != 2)
        throw ParseError("expected 'rank N'", line_no, tokens[0].column);
      int rank = to_int(tokens[1]);
      if (rank < 1) throw ParseError("rank must be positive", line_no, tokens[1].column);
      result.emplace(rank);
      continue;
    }
    if (tokens.size() != 3) throw ParseError("expected 'i j m'", line_no, tokens[0].column);
    int i = to_int(tokens[0]);
    int j = to_int(tokens[1]);
    int n = result->rank();
    if (i < 1 || i > n) throw ParseError("generator index out of range", line_no, tokens[0].column);
    if (j < 1 || j > n) throw ParseError("generator index out of range", line_no, tokens[1].column);
    if (i == j) throw ParseError("diagonal label cannot be set", line_no, tokens[1].column);
    int m;
    if (tokens[2].text == "inf") {
      m = kInfinity;
    } else {
      m = to_int(tokens[2]);
      if (m < 2) throw ParseError("label must be >= 2", line_no, tokens[2].column);
    }
    auto key = std::minmax(i, j);
    if (auto it = declared.find(key); it != declared.end() && it->second != m)
      throw ParseError("conflicting duplicate declaration of edge " + std::to_string(key.first) + "-" +
                           std::to_string(key.second),
                       line_no, tokens[0].column);
    declared[key] = m;
    result->set_label(i - 1, j - 1, m);
  }
  if (!result) throw ParseError("missing 'rank N' line", line_no, 1);
  return *result;
}

/// Bit-exact serialization: `rank N` then every edge (m >= 3 or inf) sorted
/// lexicographically with 1-based indices.
inline std::string serialize_scheme(const CoxeterMatrix& m) {
  std::string out = "rank " + std::to_string(m.rank()) + "\n";
  for (const auto& e : scheme_graph(m).edges)
    out += std::to_string(e.i + 1) + " " + std::to_string(e.j + 1) + " " + label_string(e.label) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition and classification

struct SchemePart {
  std::vector<int> nodes;  // sorted original indices
  CoxeterMatrix matrix;    // principal submatrix on `nodes`
};

inline std::vector<SchemePart> decompose(const CoxeterMatrix& m) {
  auto adj = scheme_graph(m).adjacency();
  std::vector<int> comp(m.rank(), -1);
  std::vector<SchemePart> parts;
  for (int s = 0; s < m.rank(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = static_cast<int>(parts.size());
    for (size_t k = 0; k < nodes.size(); ++k)
      for (int v : adj[nodes[k]])
        if (comp[v] < 0) {
          comp[v] = comp[s];
          nodes.push_back(v);
        }
    std::sort(nodes.begin(), nodes.end());
    CoxeterMatrix sub = m.principal(nodes);
    parts.push_back({std::move(nodes), std::move(sub)});
  }
  return parts;
}

/// Numerical signature of a symmetric matrix at the given eigenvalue threshold.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

inline Signature signature(const Eigen::MatrixXd& g, double threshold = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  Signature s;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    double v = solver.eigenvalues()[i];
    if (v > threshold)
      ++s.positive;
    else if (v < -threshold)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

/// Classification of one connected component, with its generators listed in
/// the catalogue's diagram order (e.g. for BC_n the last node is the end of
/// the label-4 edge; for H_n the first edge carries the label 5).
struct ComponentClass {
  std::vector<int> nodes;
  Summand type;
};

namespace detail {

/// Catalogue match on a connected component given by its principal matrix;
/// `order` receives local indices in diagram order.
inline std::optional<Summand> match_catalogue(const CoxeterMatrix& c, std::vector<int>& order) {
  const int r = c.rank();
  order.clear();
  if (r == 1) {
    order = {0};
    return Summand{Family::A, 1, 0};
  }
  auto g = scheme_graph(c);
  for (const auto& e : g.edges)
    if (is_infinite_label(e.label)) return std::nullopt;
  if (static_cast<int>(g.edges.size()) != r - 1) return std::nullopt;
  if (r == 2) {
    order = {0, 1};
    auto s = make_summands(Family::G, 2, c.label(0, 1));
    return s.front();
  }
  auto adj = g.adjacency();
  std::vector<int> branch;
  for (int v = 0; v < r; ++v) {
    if (adj[v].size() > 3) return std::nullopt;
    if (adj[v].size() == 3) branch.push_back(v);
  }
  std::vector<const SchemeEdge*> special;
  for (const auto& e : g.edges)
    if (e.label != 3) special.push_back(&e);

  // Walks from `start` away from `prev` until a leaf, returning the nodes.
  auto arm = [&](int start, int prev) {
    std::vector<int> nodes{start};
    int cur = start;
    while (true) {
      std::vector<int> next;
      for (int w : adj[cur])
        if (w != prev) next.push_back(w);
      if (next.size() != 1) break;
      prev = cur;
      cur = next.front();
      nodes.push_back(cur);
    }
    return nodes;
  };

  if (branch.empty()) {
    int end = -1;
    for (int v = 0; v < r; ++v)
      if (adj[v].size() == 1) {
        end = v;
        break;
      }
    std::vector<int> path = arm(end, -1);
    auto label_at = [&](const std::vector<int>& p, int k) { return c.label(p[k], p[k + 1]); };
    std::vector<int> reversed(path.rbegin(), path.rend());
    if (special.empty()) {
      order = path;
      return Summand{Family::A, r, 0};
    }
    if (special.size() != 1) return std::nullopt;
    int m = special.front()->label;
    if (m == 4) {
      if (label_at(path, r - 2) == 4) {
        order = path;
        return Summand{Family::BC, r, 0};
      }
      if (label_at(path, 0) == 4) {
        order = reversed;
        return Summand{Family::BC, r, 0};
      }
      if (r == 4 && label_at(path, 1) == 4) {
        order = path;
        return Summand{Family::F, 4, 0};
      }
      return std::nullopt;
    }
    if (m == 5 && (r == 3 || r == 4)) {
      if (label_at(path, 0) == 5) {
        order = path;
        return Summand{Family::H, r, 0};
      }
      if (label_at(path, r - 2) == 5) {
        order = reversed;
        return Summand{Family::H, r, 0};
      }
    }
    return std::nullopt;
  }

  if (branch.size() != 1 || !special.empty()) return std::nullopt;
  int center = branch.front();
  std::vector<std::vector<int>> arms;
  for (int w : adj[center]) arms.push_back(arm(w, center));
  std::sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.back() < b.back();
  });
  size_t p = arms[2].size(), q = arms[1].size(), s = arms[0].size();
  // Diagram order: longest arm from its tip to the center, then the other arms.
  order.assign(arms[0].rbegin(), arms[0].rend());
  order.push_back(center);
  for (size_t k = 1; k < 3; ++k) order.insert(order.end(), arms[k].begin(), arms[k].end());
  if (p == 1 && q == 1) return Summand{Family::D, r, 0};
  if (p == 1 && q == 2 && s >= 2 && s <= 4) return Summand{Family::E, r, 0};
  return std::nullopt;
}

}  // namespace detail

/// Classifies every connected component. Finite types are recognised twice,
/// by diagram match and by positive definiteness of the cosine matrix; a
/// disagreement raises InternalError.
inline std::vector<ComponentClass> classify_components(const CoxeterMatrix& m, double threshold = 1e-9) {
  std::vector<ComponentClass> out;
  for (const auto& part : decompose(m)) {
    std::vector<int> order;
    auto match = detail::match_catalogue(part.matrix, order);
    bool has_infinity = false;
    for (const auto& e : scheme_graph(part.matrix).edges) has_infinity |= is_infinite_label(e.label);
    Signature sig = signature(part.matrix.cosine_matrix(), threshold);
    bool definite = sig.negative == 0 && sig.zero == 0;
    if (match.has_value() != definite)
      throw InternalError("catalogue match and definiteness disagree on component of rank " +
                          std::to_string(part.matrix.rank()));
    ComponentClass cc;
    if (match) {
      for (int local : order) cc.nodes.push_back(part.nodes[local]);
      cc.type = *match;
    } else {
      cc.nodes = part.nodes;
      int r = part.matrix.rank();
      bool euclidean = !has_infinity && sig.negative == 0 && sig.zero == 1;
      cc.type = Summand{euclidean ? Family::Euclidean : Family::Other, r, 0};
    }
    out.push_back(std::move(cc));
  }
  return out;
}

inline CoxeterType classify(const CoxeterMatrix& m) {
  std::vector<Summand> all;
  for (auto& c : classify_components(m)) all.push_back(c.type);
  return CoxeterType(std::move(all));
}

/// The catalogue diagram of a finite irreducible summand, nodes in diagram order.
inline CoxeterMatrix standard_scheme(const Summand& s) {
  const int r = s.rank;
  CoxeterMatrix m(r);
  auto chain = [&](int from, int to) {
    for (int i = from; i + 1 <= to; ++i) m.set_label(i, i + 1, 3);
  };
  switch (s.family) {
    case Family::A:
      chain(0, r - 1);
      break;
    case Family::BC:
      chain(0, r - 1);
      m.set_label(r - 2, r - 1, 4);
      break;
    case Family::D:
      chain(0, r - 2);
      m.set_label(r - 3, r - 1, 3);
      break;
    case Family::E:
      // Bourbaki numbering: 1-3-4-5-...-r with 2 attached to 4.
      m.set_label(0, 2, 3);
      m.set_label(1, 3, 3);
      chain(2, r - 1);
      break;
    case Family::F:
      chain(0, 3);
      m.set_label(1, 2, 4);
      break;
    case Family::G:
      m.set_label(0, 1, s.m);
      break;
    case Family::H:
      chain(0, r - 1);
      m.set_label(0, 1, 5);
      break;
    case Family::R:
      break;
    default:
      throw DomainError("no standard scheme for " + s.name());
  }
  return m;
}

}  // namespace coxroll
