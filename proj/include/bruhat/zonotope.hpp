#pragma once

// Cubillages of cyclic zonotopes: faces given by generating vectors and an
// initial vertex, the initial-vertex rule, facet orientation and flips.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/bruhat.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/vertex_set.hpp"

namespace bruhat {

/// The face ξ_A + Σ_{l∈L} [0, ξ_l] of Z(S, |S|).
struct ZFace {
  VertexSet generators;      // L
  VertexSet initial_vertex;  // A
  VertexSet support;         // S

  /// B = S \ (L ∪ A).
  VertexSet complement() const {
    return support - (generators | initial_vertex);
  }
  int dimension() const { return generators.size(); }

  bool valid() const {
    return generators.is_disjoint_from(initial_vertex) &&
           (generators | initial_vertex).is_subset_of(support);
  }

  friend bool operator==(const ZFace&, const ZFace&) = default;
  friend bool operator<(const ZFace& a, const ZFace& b) {
    if (a.support != b.support) return a.support < b.support;
    if (a.generators != b.generators) return a.generators < b.generators;
    return a.initial_vertex < b.initial_vertex;
  }
};

/// Initial vertex of the cube with generating vectors L inside the support,
/// for an inversion family given by `member` on (|L|+1)-subsets.
/// a ∈ A iff (L∪a is a member and a is an even gap) or (L∪a is not a member
/// and a is an odd gap).
template <typename Membership>
VertexSet initial_vertex_in(const Membership& member, VertexSet l,
                            VertexSet support) {
  VertexSet a;
  for (int x : support - l) {
    const bool odd_gap = (l.count_greater(x) & 1) != 0;
    if (member(l.with(x)) != odd_gap) a = a.with(x);
  }
  return a;
}

/// A_L^U for U ∈ B([0,n], r) and |L| = r.
inline VertexSet initial_vertex(const ConsistentSet& u, VertexSet l) {
  if (l.size() != u.level()) {
    throw std::invalid_argument("generating set " + l.to_string() +
                                " must have size " +
                                std::to_string(u.level()));
  }
  if (!l.is_subset_of(VertexSet::full(u.n()))) {
    throw std::invalid_argument("generating set outside [0,n]");
  }
  return initial_vertex_in([&](VertexSet k) { return u.contains(k); }, l,
                           VertexSet::full(u.n()));
}

/// One cube per r-subset L of [0,n], keyed by L in lexicographic order.
struct Cubillage {
  int n = 0;
  int r = 0;
  std::vector<std::pair<VertexSet, VertexSet>> cubes;  // (L, A_L)

  VertexSet initial_vertex_of(VertexSet l) const {
    auto it = std::lower_bound(
        cubes.begin(), cubes.end(), l,
        [](const auto& cube, VertexSet key) { return cube.first < key; });
    if (it == cubes.end() || it->first != l) {
      throw std::invalid_argument("no cube with generators " + l.to_string());
    }
    return it->second;
  }
  ZFace face_of(VertexSet l) const {
    return {l, initial_vertex_of(l), VertexSet::full(n)};
  }

  friend bool operator==(const Cubillage&, const Cubillage&) = default;
};

inline Cubillage cubillage_of(const ConsistentSet& u) {
  Cubillage q{u.n(), u.level(), {}};
  for (VertexSet l : subsets_of_size(VertexSet::full(u.n()), u.level())) {
    q.cubes.emplace_back(l, initial_vertex(u, l));
  }
  return q;
}

/// The inverse of cubillage_of: K = L ∪ a is an inversion iff membership of
/// a in A_L agrees with a being an even gap in L.
inline ConsistentSet consistent_set_of(const Cubillage& q) {
  std::vector<VertexSet> inv;
  for (VertexSet k : subsets_of_size(VertexSet::full(q.n), q.r + 1)) {
    const int a = k.max();
    const VertexSet l = k.without(a);
    const bool even_gap = (l.count_greater(a) & 1) == 0;
    if (q.initial_vertex_of(l).contains(a) == even_gap) inv.push_back(k);
  }
  return ConsistentSet::trusted(q.n, q.r, std::move(inv));
}

/// Lower cubillage of Z([0,n], r) from the alternating-interval description:
/// with L = {l_0 < ... < l_{r-1}} and l_{-1} := 0,
///   L ∪ A = ... ∪ [l_{r-4}, l_{r-3}] ∪ [l_{r-2}, l_{r-1}],
///   L ∪ B = ... ∪ [l_{r-3}, l_{r-2}] ∪ [l_{r-1}, n].
inline Cubillage lower_cubillage(int n, int r) {
  if (r < 0 || r > n + 1) throw std::invalid_argument("need 0 <= r <= n+1");
  Cubillage q{n, r, {}};
  for (VertexSet l : subsets_of_size(VertexSet::full(n), r)) {
    const std::vector<int> ls = l.elements();
    auto at = [&](int j) { return j < 0 ? 0 : ls[j]; };
    VertexSet with_a;
    for (int j = r - 1; j >= 0; j -= 2) {
      with_a = with_a | VertexSet::interval(at(j - 1), at(j));
    }
    q.cubes.emplace_back(l, with_a - l);
  }
  return q;
}

struct FacetSplit {
  std::vector<ZFace> lower;
  std::vector<ZFace> upper;
};

/// Upper and lower facets of a face: (L\l, A) is upper iff l is an odd gap in
/// L\l; (L\l, A∪l) is upper iff l is an even gap in L\l.
inline FacetSplit facets(const ZFace& f) {
  if (f.generators.empty()) {
    throw std::invalid_argument("a vertex has no facets");
  }
  FacetSplit out;
  for (int l : f.generators) {
    const VertexSet rest = f.generators.without(l);
    const bool odd = (rest.count_greater(l) & 1) != 0;
    ZFace keep{rest, f.initial_vertex, f.support};
    ZFace absorb{rest, f.initial_vertex.with(l), f.support};
    (odd ? out.upper : out.lower).push_back(keep);
    (odd ? out.lower : out.upper).push_back(absorb);
  }
  return out;
}

/// The (r+1)-dimensional face whose lower facets lie in the cubillage of U and
/// whose upper facets lie in the cubillage of U ∪ {K}.
inline ZFace flip_face(const ConsistentSet& u, VertexSet k) {
  if (k.size() != u.level() + 1) {
    throw std::invalid_argument("flip set has the wrong size");
  }
  // l = max K is an even gap in K \ l, so (K \ l, A) is a lower facet.
  return {k, initial_vertex(u, k.without(k.max())), VertexSet::full(u.n())};
}

/// The cubillage after the increasing flip at K.
inline Cubillage apply_flip(const Cubillage& q, VertexSet k) {
  const ConsistentSet u = consistent_set_of(q);
  if (k.size() != q.r + 1 || !k.is_subset_of(VertexSet::full(q.n))) {
    throw std::invalid_argument("flip set has the wrong size");
  }
  if (u.contains(k) || !u.consistent_after_toggle(k)) {
    throw std::invalid_argument("flip at " + k.to_string() +
                                " is not available");
  }
  const ConsistentSet next = u.toggled(k);
  Cubillage out = q;
  for (auto& [l, a] : out.cubes) {
    if (l.is_subset_of(k)) a = initial_vertex(next, l);
  }
  return out;
}

/// One step of a maximal chain in the reoriented order: the subset whose
/// membership changes and the flip face traversed.
struct ReorientedStep {
  VertexSet subset;
  bool removal = false;  // subset ∈ base, so it leaves the inversion set
  ZFace face;
};

/// A maximal chain of the order reoriented at `base`, from base to its
/// complement.
struct ReorientedChain {
  ConsistentSet base;
  std::vector<ReorientedStep> steps;

  std::vector<VertexSet> order() const {
    std::vector<VertexSet> out;
    for (const auto& s : steps) out.push_back(s.subset);
    return out;
  }
};

/// Builds the chain that toggles the subsets of `order` one after another,
/// throwing if some intermediate set is inconsistent.
inline ReorientedChain reoriented_chain_from_order(
    const ConsistentSet& base, const std::vector<VertexSet>& order) {
  const auto universe =
      subsets_of_size(VertexSet::full(base.n()), base.level() + 1);
  std::vector<VertexSet> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != universe) {
    throw std::invalid_argument("order must list every subset exactly once");
  }
  ReorientedChain chain{base, {}};
  ConsistentSet v = base;
  for (VertexSet l : order) {
    if (!v.consistent_after_toggle(l)) {
      throw InconsistentSetError("toggling " + l.to_string() + " at " +
                                 v.to_string() + " breaks consistency");
    }
    const ConsistentSet next = v.toggled(l);
    const bool removal = base.contains(l);
    // The flip face always hangs below the set that does not contain l.
    const ZFace face = flip_face(removal ? next : v, l);
    chain.steps.push_back({l, removal, face});
    v = next;
  }
  return chain;
}

/// Depth-first search, in lexicographic branching order, for a maximal chain
/// of the reoriented order from U to its complement. Returns nullopt when the
/// search space is exhausted.
inline std::optional<ReorientedChain> reoriented_maximal_chain(
    const ConsistentSet& base, std::size_t node_cap = kDefaultNodeCap) {
  const std::size_t total =
      subsets_of_size(VertexSet::full(base.n()), base.level() + 1).size();
  std::vector<VertexSet> order;
  std::size_t nodes = 0;
  auto dfs = [&](auto&& self, const ConsistentSet& v) -> bool {
    if (++nodes > node_cap) {
      throw ResourceLimitError("reoriented chain search exceeds node cap");
    }
    if (order.size() == total) return true;
    for (auto& [l, next] : reoriented_coverings(base, v)) {
      order.push_back(l);
      if (self(self, next)) return true;
      order.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, base)) return std::nullopt;
  return reoriented_chain_from_order(base, order);
}

}  // namespace bruhat
