#pragma once

// Higher Bruhat orders B([0,n], r) as posets of consistent sets.
//
// Level convention: an element of B([0,n], r) is a consistent family of
// (r+1)-subsets of [0,n]; consistency is tested on the packets of the
// (r+2)-subsets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/vertex_set.hpp"

namespace bruhat {

inline constexpr std::size_t kDefaultElementCap = 5'000'000;
inline constexpr std::size_t kDefaultNodeCap = 10'000'000;

/// Lexicographic comparison of two families, each listed in lex order.
inline bool family_less(const std::vector<VertexSet>& a,
                        const std::vector<VertexSet>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Finds an (r+2)-subset M of [0,n] whose packet meets `members` in neither a
/// beginning nor an ending segment. `members` need not be sorted.
inline std::optional<VertexSet> find_violated_packet(
    const std::vector<VertexSet>& members, int n, int r) {
  std::unordered_map<VertexSet, std::uint64_t, VertexSetHash> positions;
  for (VertexSet k : members) {
    for (int v = 0; v <= n; ++v) {
      if (k.contains(v)) continue;
      const VertexSet m = k.with(v);
      positions[m] |= std::uint64_t{1} << packet_position(m, k);
    }
  }
  std::optional<VertexSet> worst;
  for (const auto& [m, pos] : positions) {
    if (classify_segment(pos, r + 2) == Segment::kNeither) {
      if (!worst || m < *worst) worst = m;
    }
  }
  return worst;
}

namespace detail {
inline void check_members(const std::vector<VertexSet>& members, int n,
                          int r) {
  if (n < 0 || n > kMaxVertex) throw std::invalid_argument("n out of range");
  if (r < 0) throw std::invalid_argument("level r must be non-negative");
  const VertexSet ground = VertexSet::full(n);
  for (VertexSet k : members) {
    if (k.size() != r + 1) {
      throw std::invalid_argument("inversion " + k.to_string() + " has size " +
                                  std::to_string(k.size()) + ", expected " +
                                  std::to_string(r + 1));
    }
    if (!k.is_subset_of(ground)) {
      throw std::invalid_argument("inversion " + k.to_string() +
                                  " is not contained in [0," +
                                  std::to_string(n) + "]");
    }
  }
}
}  // namespace detail

inline bool is_consistent(const std::vector<VertexSet>& members, int n,
                          int r) {
  detail::check_members(members, n, r);
  return !find_violated_packet(members, n, r).has_value();
}

/// An element of B([0,n], r), stored as its inversion set.
class ConsistentSet {
 public:
  ConsistentSet() = default;

  /// Validates sizes and the segment condition.
  static ConsistentSet make(int n, int r, std::vector<VertexSet> members) {
    detail::check_members(members, n, r);
    if (auto bad = find_violated_packet(members, n, r)) {
      throw InconsistentSetError("inversion set violates the segment condition "
                                 "at packet(" + bad->to_string() + ")");
    }
    return trusted(n, r, std::move(members));
  }

  /// No consistency check; callers guarantee the invariant.
  static ConsistentSet trusted(int n, int r, std::vector<VertexSet> members) {
    ConsistentSet u;
    u.n_ = n;
    u.r_ = r;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    u.members_ = std::move(members);
    return u;
  }

  static ConsistentSet empty(int n, int r) { return trusted(n, r, {}); }
  /// All (r+1)-subsets of [0,n].
  static ConsistentSet top(int n, int r) {
    return trusted(n, r, subsets_of_size(VertexSet::full(n), r + 1));
  }

  int n() const { return n_; }
  int level() const { return r_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  /// Members in lexicographic order.
  const std::vector<VertexSet>& members() const { return members_; }

  bool contains(VertexSet k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
  }

  /// Adds or removes one member without any check.
  ConsistentSet toggled(VertexSet k) const {
    std::vector<VertexSet> next = members_;
    auto it = std::lower_bound(next.begin(), next.end(), k);
    if (it != next.end() && *it == k) {
      next.erase(it);
    } else {
      next.insert(it, k);
    }
    ConsistentSet out;
    out.n_ = n_;
    out.r_ = r_;
    out.members_ = std::move(next);
    return out;
  }

  /// The complementary inversion set (again consistent).
  ConsistentSet complement() const {
    std::vector<VertexSet> out;
    for (VertexSet k : subsets_of_size(VertexSet::full(n_), r_ + 1)) {
      if (!contains(k)) out.push_back(k);
    }
    return trusted(n_, r_, std::move(out));
  }

  /// Checks consistency only at the packets containing `k`, assuming the rest
  /// of the set is already consistent.
  bool consistent_after_toggle(VertexSet k) const {
    for (int v = 0; v <= n_; ++v) {
      if (k.contains(v)) continue;
      const VertexSet m = k.with(v);
      std::uint64_t pos = 0;
      for (int w : m) {
        const VertexSet member = m.without(w);
        const bool in = (member == k) ? !contains(member) : contains(member);
        if (in) pos |= std::uint64_t{1} << packet_position(m, member);
      }
      if (classify_segment(pos, r_ + 2) == Segment::kNeither) return false;
    }
    return true;
  }

  friend bool operator==(const ConsistentSet& a, const ConsistentSet& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.members_ == b.members_;
  }
  /// Cardinality first, then lexicographic on the member lists.
  friend bool operator<(const ConsistentSet& a, const ConsistentSet& b) {
    if (a.members_.size() != b.members_.size()) {
      return a.members_.size() < b.members_.size();
    }
    return family_less(a.members_, b.members_);
  }

  std::string to_string() const {
    if (members_.empty()) return "{}";
    std::string out = "{";
    for (std::size_t j = 0; j < members_.size(); ++j) {
      if (j) out += ",";
      out += members_[j].to_string();
    }
    return out + "}";
  }

 private:
  int n_ = 0;
  int r_ = 0;
  std::vector<VertexSet> members_;
};

/// All K not in U such that U ∪ {K} is consistent, paired with U ∪ {K}.
inline std::vector<std::pair<VertexSet, ConsistentSet>> covering_relations(
    const ConsistentSet& u) {
  std::vector<std::pair<VertexSet, ConsistentSet>> out;
  for (VertexSet k : subsets_of_size(VertexSet::full(u.n()), u.level() + 1)) {
    if (u.contains(k)) continue;
    if (u.consistent_after_toggle(k)) out.emplace_back(k, u.toggled(k));
  }
  return out;
}

/// Elements of B([0,n], r), sorted by cardinality then lexicographically.
/// For r > n the result is {∅}.
inline std::vector<ConsistentSet> enumerate_bruhat(
    int n, int r, std::size_t cap = kDefaultElementCap) {
  if (n < 0 || r < 0) throw std::invalid_argument("n and r must be >= 0");
  if (r > n) return {ConsistentSet::empty(n, r)};
  const std::vector<VertexSet> universe =
      subsets_of_size(VertexSet::full(n), r + 1);
  const std::size_t words = (universe.size() + 63) / 64;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index;
  for (std::size_t j = 0; j < universe.size(); ++j) index[universe[j]] = j;

  using Key = std::vector<std::uint64_t>;
  auto key_of = [&](const ConsistentSet& u) {
    Key key(words, 0);
    for (VertexSet k : u.members()) {
      const std::size_t j = index.at(k);
      key[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return key;
  };

  std::set<Key> seen;
  std::vector<ConsistentSet> out;
  std::vector<ConsistentSet> stack{ConsistentSet::empty(n, r)};
  seen.insert(key_of(stack.back()));
  // Every element is reachable from ∅ through covering relations.
  while (!stack.empty()) {
    ConsistentSet u = std::move(stack.back());
    stack.pop_back();
    for (auto& [k, next] : covering_relations(u)) {
      if (seen.insert(key_of(next)).second) {
        if (seen.size() > cap) {
          throw ResourceLimitError("B([0," + std::to_string(n) + "]," +
                                   std::to_string(r) + ") exceeds the cap of " +
                                   std::to_string(cap) + " elements");
        }
        stack.push_back(std::move(next));
      }
    }
    out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// U/S: members of U disjoint from S, relabelled onto [0, n - |S|].
inline ConsistentSet contraction(const ConsistentSet& u, VertexSet s) {
  const VertexSet ground = VertexSet::full(u.n());
  if (!s.is_subset_of(ground)) {
    throw std::invalid_argument("contraction set not contained in [0,n]");
  }
  std::vector<VertexSet> out;
  for (VertexSet k : u.members()) {
    if (k.is_disjoint_from(s)) out.push_back(compress(k, s));
  }
  return ConsistentSet::trusted(u.n() - s.size(), u.level(), std::move(out));
}

/// A total order on the (r+1)-subsets of [0,n] every prefix of which is
/// consistent.
struct MaximalChain {
  int n = 0;
  int r = 0;
  std::vector<VertexSet> order;
};

/// Throws unless `c` lists every (r+1)-subset once with consistent prefixes.
inline void validate_chain(const MaximalChain& c) {
  const auto universe = subsets_of_size(VertexSet::full(c.n), c.r + 1);
  std::vector<VertexSet> sorted = c.order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != universe) {
    throw std::invalid_argument(
        "chain does not list every (r+1)-subset exactly once");
  }
  ConsistentSet prefix = ConsistentSet::empty(c.n, c.r);
  for (VertexSet k : c.order) {
    if (!prefix.consistent_after_toggle(k)) {
      throw InconsistentSetError("chain prefix becomes inconsistent at " +
                                 k.to_string());
    }
    prefix = prefix.toggled(k);
  }
}

/// The element of B([0,n], r+1) whose members are the (r+2)-subsets whose
/// packets appear in reverse lexicographic order along the chain.
inline ConsistentSet chain_class_to_element(const MaximalChain& c) {
  validate_chain(c);
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> when;
  for (std::size_t t = 0; t < c.order.size(); ++t) when[c.order[t]] = t;
  std::vector<VertexSet> inv;
  for (VertexSet m : subsets_of_size(VertexSet::full(c.n), c.r + 2)) {
    const Packet p = packet(m);
    // Admissibility makes the packet monotone; its first two members decide.
    if (when.at(p.members[0]) > when.at(p.members[1])) inv.push_back(m);
  }
  return ConsistentSet::trusted(c.n, c.r + 1, std::move(inv));
}

/// A maximal chain of B([0,n], r) whose class is W ∈ B([0,n], r+1): the
/// linear extension of the packet constraints that always takes the
/// lexicographically smallest available subset.
inline MaximalChain realize_chain(const ConsistentSet& w) {
  if (w.level() < 1) {
    throw std::invalid_argument("realize_chain needs an element of level >= 1");
  }
  const int n = w.n();
  const int r = w.level() - 1;
  const auto universe = subsets_of_size(VertexSet::full(n), r + 1);
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index;
  for (std::size_t j = 0; j < universe.size(); ++j) index[universe[j]] = j;
  std::vector<std::vector<std::size_t>> succ(universe.size());
  std::vector<int> indegree(universe.size(), 0);
  for (VertexSet m : subsets_of_size(VertexSet::full(n), r + 2)) {
    const Packet p = packet(m);
    const bool reversed = w.contains(m);
    for (std::size_t j = 0; j + 1 < p.members.size(); ++j) {
      std::size_t a = index.at(p.members[j]);
      std::size_t b = index.at(p.members[j + 1]);
      if (reversed) std::swap(a, b);
      succ[a].push_back(b);
      ++indegree[b];
    }
  }
  // Indices follow lex order, so the smallest index is the lex-smallest set.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t j = 0; j < universe.size(); ++j) {
    if (indegree[j] == 0) ready.push(j);
  }
  MaximalChain c{n, r, {}};
  while (!ready.empty()) {
    const std::size_t j = ready.top();
    ready.pop();
    c.order.push_back(universe[j]);
    for (std::size_t s : succ[j]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (c.order.size() != universe.size()) {
    throw InconsistentSetError("packet constraints of " + w.to_string() +
                               " contain a cycle");
  }
  return c;
}

/// Calls `visit(order)` for every maximal chain of B([0,n], r).
template <typename Visitor>
void for_each_maximal_chain(int n, int r, Visitor&& visit,
                            std::size_t node_cap = kDefaultNodeCap) {
  const std::size_t total =
      subsets_of_size(VertexSet::full(n), r + 1).size();
  std::size_t nodes = 0;
  std::vector<VertexSet> order;
  auto dfs = [&](auto&& self, const ConsistentSet& u) -> void {
    if (++nodes > node_cap) {
      throw ResourceLimitError("maximal-chain search exceeds " +
                               std::to_string(node_cap) + " nodes");
    }
    if (order.size() == total) {
      visit(MaximalChain{n, r, order});
      return;
    }
    for (auto& [k, next] : covering_relations(u)) {
      order.push_back(k);
      self(self, next);
      order.pop_back();
    }
  };
  dfs(dfs, ConsistentSet::empty(n, r));
}

/// Number of commutation classes of maximal chains in B([0,n], r), found by
/// canonicalising every chain through chain_class_to_element.
inline std::size_t count_chain_classes(int n, int r,
                                       std::size_t node_cap = kDefaultNodeCap) {
  std::set<std::vector<VertexSet>> classes;
  for_each_maximal_chain(
      n, r,
      [&](const MaximalChain& c) {
        classes.insert(chain_class_to_element(c).members());
      },
      node_cap);
  return classes.size();
}

/// Reoriented covers of V with respect to the base U: toggle one subset on
/// which V still agrees with U.
inline std::vector<std::pair<VertexSet, ConsistentSet>> reoriented_coverings(
    const ConsistentSet& base, const ConsistentSet& v) {
  if (base.n() != v.n() || base.level() != v.level()) {
    throw std::invalid_argument("reoriented covers need matching (n, r)");
  }
  std::vector<std::pair<VertexSet, ConsistentSet>> out;
  for (VertexSet l : subsets_of_size(VertexSet::full(v.n()), v.level() + 1)) {
    if (base.contains(l) != v.contains(l)) continue;
    if (v.consistent_after_toggle(l)) out.emplace_back(l, v.toggled(l));
  }
  return out;
}

}  // namespace bruhat
