#pragma once

// Finite simplicial complexes, Σ-consistent sets, coproducts on complexes,
// mod-2 cochains with cup-i products, cohomology and Steenrod squares.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bruhat/bruhat.hpp"
#include "bruhat/chain.hpp"
#include "bruhat/coproduct.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/vertex_set.hpp"

namespace bruhat {

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// The downward closure of the given faces.
  static SimplicialComplex from_facets(const std::vector<VertexSet>& facets) {
    std::set<VertexSet> all;
    for (VertexSet f : facets) {
      if (f.empty()) throw std::invalid_argument("empty facet");
      if (f.size() > 20) throw std::invalid_argument("facet too large");
      for (VertexSet s : nonempty_subsets(f)) all.insert(s);
    }
    return build({all.begin(), all.end()});
  }

  /// Rejects families that are not closed under taking nonempty subsets.
  static SimplicialComplex from_simplices(std::vector<VertexSet> simplices) {
    std::set<VertexSet> all(simplices.begin(), simplices.end());
    for (VertexSet s : all) {
      if (s.empty()) throw std::invalid_argument("empty simplex");
      if (s.size() < 2) continue;
      for (int v : s) {
        if (!all.count(s.without(v))) {
          throw std::invalid_argument("not closed under faces: " +
                                      s.to_string() + " lacks " +
                                      s.without(v).to_string());
        }
      }
    }
    return build({all.begin(), all.end()});
  }

  /// The full simplex on [0,n].
  static SimplicialComplex simplex(int n) {
    return from_facets({VertexSet::full(n)});
  }

  /// Largest vertex label (-1 when empty).
  int n() const { return n_; }
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  const std::vector<VertexSet>& simplices() const { return simplices_; }

  /// Σ_p: simplices with p+1 vertices, in lexicographic order.
  const std::vector<VertexSet>& of_dimension(int p) const {
    static const std::vector<VertexSet> kNone;
    if (p < 0 || p >= static_cast<int>(by_dim_.size())) return kNone;
    return by_dim_[p];
  }
  bool contains(VertexSet s) const { return index_.count(s.bits()) != 0; }
  /// Position of s inside of_dimension(|s|-1).
  std::size_t index_of(VertexSet s) const {
    auto it = index_.find(s.bits());
    if (it == index_.end()) {
      throw std::invalid_argument(s.to_string() + " is not a simplex");
    }
    return it->second;
  }

  std::vector<VertexSet> maximal() const {
    std::vector<VertexSet> out;
    for (VertexSet s : simplices_) {
      bool is_max = true;
      for (int v = 0; v <= n_ && is_max; ++v) {
        if (!s.contains(v) && contains(s.with(v))) is_max = false;
      }
      if (is_max) out.push_back(s);
    }
    return out;
  }

 private:
  static SimplicialComplex build(std::vector<VertexSet> sorted) {
    SimplicialComplex c;
    std::sort(sorted.begin(), sorted.end());
    c.simplices_ = std::move(sorted);
    for (VertexSet s : c.simplices_) {
      c.n_ = std::max(c.n_, s.max());
      const int p = s.size() - 1;
      if (static_cast<int>(c.by_dim_.size()) <= p) c.by_dim_.resize(p + 1);
      c.index_[s.bits()] = c.by_dim_[p].size();
      c.by_dim_[p].push_back(s);
    }
    return c;
  }

  int n_ = -1;
  std::vector<VertexSet> simplices_;
  std::vector<std::vector<VertexSet>> by_dim_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

namespace detail {
inline void check_sigma_members(const std::vector<VertexSet>& u,
                                const SimplicialComplex& sigma, int r) {
  for (VertexSet k : u) {
    if (k.size() != r + 1 || !sigma.contains(k)) {
      throw std::invalid_argument(k.to_string() + " is not a simplex of Σ with " +
                                  std::to_string(r + 1) + " vertices");
    }
  }
}

inline bool consistent_at(const std::set<VertexSet>& u, VertexSet m) {
  std::uint64_t pos = 0;
  for (int v : m) {
    const VertexSet member = m.without(v);
    if (u.count(member)) pos |= std::uint64_t{1} << packet_position(m, member);
  }
  return classify_segment(pos, m.size()) != Segment::kNeither;
}
}  // namespace detail

/// U ⊆ Σ_r is Σ-consistent when it passes the segment test at every
/// (r+1)-simplex of Σ; Σ-simplices of other shapes impose nothing.
inline bool is_sigma_consistent(const std::vector<VertexSet>& u,
                                const SimplicialComplex& sigma, int r) {
  detail::check_sigma_members(u, sigma, r);
  const std::set<VertexSet> members(u.begin(), u.end());
  for (VertexSet m : sigma.of_dimension(r + 1)) {
    if (!detail::consistent_at(members, m)) return false;
  }
  return true;
}

/// K ∈ Σ_r \ U with U ∪ {K} still Σ-consistent.
inline std::vector<VertexSet> addable_simplices(
    const std::vector<VertexSet>& u, const SimplicialComplex& sigma, int r) {
  detail::check_sigma_members(u, sigma, r);
  std::set<VertexSet> members(u.begin(), u.end());
  std::vector<VertexSet> out;
  for (VertexSet k : sigma.of_dimension(r)) {
    if (members.count(k)) continue;
    members.insert(k);
    bool ok = true;
    for (int v = 0; v <= sigma.n() && ok; ++v) {
      if (k.contains(v)) continue;
      const VertexSet m = k.with(v);
      if (sigma.contains(m)) ok = detail::consistent_at(members, m);
    }
    members.erase(k);
    if (ok) out.push_back(k);
  }
  return out;
}

/// All Σ-consistent subsets of Σ_r by backtracking over Σ_r in lex order;
/// each (r+1)-simplex is checked as soon as all of its facets are decided.
inline std::vector<std::vector<VertexSet>> enumerate_sigma_consistent(
    const SimplicialComplex& sigma, int r,
    std::size_t cap = kDefaultElementCap) {
  const std::vector<VertexSet>& universe = sigma.of_dimension(r);
  std::vector<std::vector<VertexSet>> checks(universe.size());
  for (VertexSet m : sigma.of_dimension(r + 1)) {
    std::size_t last = 0;
    for (int v : m) last = std::max(last, sigma.index_of(m.without(v)));
    checks[last].push_back(m);
  }
  std::vector<std::vector<VertexSet>> out;
  std::set<VertexSet> chosen;
  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (j == universe.size()) {
      if (out.size() >= cap) {
        throw ResourceLimitError("Σ-consistent enumeration exceeds cap");
      }
      out.emplace_back(chosen.begin(), chosen.end());
      return;
    }
    for (bool take : {false, true}) {
      if (take) chosen.insert(universe[j]);
      bool ok = true;
      for (VertexSet m : checks[j]) {
        if (!detail::consistent_at(chosen, m)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, j + 1);
      if (take) chosen.erase(universe[j]);
    }
  };
  dfs(dfs, 0);
  return out;
}

/// Σ-consistent U at level r = i+1 together with its complex.
class SigmaConsistentSet {
 public:
  static SigmaConsistentSet make(const SimplicialComplex& sigma, int r,
                                 std::vector<VertexSet> u) {
    if (!is_sigma_consistent(u, sigma, r)) {
      throw InconsistentSetError("set is not Σ-consistent");
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    SigmaConsistentSet out;
    out.sigma_ = sigma;
    out.r_ = r;
    out.members_ = std::move(u);
    return out;
  }
  /// U′ ∩ Σ_r for a global element U′.
  static SigmaConsistentSet restriction(const SimplicialComplex& sigma,
                                        const ConsistentSet& global) {
    std::vector<VertexSet> u;
    for (VertexSet k : global.members()) {
      if (sigma.contains(k)) u.push_back(k);
    }
    return make(sigma, global.level(), std::move(u));
  }

  const SimplicialComplex& complex() const { return sigma_; }
  int level() const { return r_; }
  const std::vector<VertexSet>& members() const { return members_; }
  bool contains(VertexSet k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
  }
  /// U_σ = U ∩ C(σ, r+1), as an element of B(σ, r) in the labels of σ.
  std::vector<VertexSet> restricted_to(VertexSet s) const {
    std::vector<VertexSet> out;
    for (VertexSet k : members_) {
      if (k.is_subset_of(s)) out.push_back(k);
    }
    return out;
  }

 private:
  SimplicialComplex sigma_;
  int r_ = 0;
  std::vector<VertexSet> members_;
};

/// σ ↦ Δ_i^{U_σ}(σ) on the simplices of Σ.
using ComplexCoproduct = std::function<TensorChain(VertexSet)>;

inline ComplexCoproduct delta_complex(const SigmaConsistentSet& u, int i) {
  if (u.level() != i + 1) {
    throw std::invalid_argument("Δ_i on Σ needs a set at level i+1");
  }
  return [u, i](VertexSet s) {
    if (!u.complex().contains(s)) {
      throw std::invalid_argument(s.to_string() + " is not a simplex");
    }
    return delta_on_face([&](VertexSet k) { return u.contains(k); }, i, s);
  };
}

/// Δ_{i}^∅ on Σ (zero for i < 0).
inline ComplexCoproduct delta_complex_empty(int i) {
  return [i](VertexSet s) {
    return delta_on_face([](VertexSet) { return false; }, i, s);
  };
}

/// LHS - RHS of the homotopy formula on every simplex; empty when it holds.
inline CheckReport complex_homotopy_check(const SigmaConsistentSet& u, int i) {
  const ComplexCoproduct d = delta_complex(u, i);
  const ComplexCoproduct lower = delta_complex_empty(i - 1);
  CheckReport report{"homotopy formula on Σ"};
  const Coefficient sign = (i & 1) ? -1 : 1;
  for (VertexSet s : u.complex().simplices()) {
    ++report.cases;
    TensorChain inner;
    if (s.size() >= 2) {
      int p = 0;
      for (int v : s) {
        inner += d(s.without(v)) * ((p & 1) ? -1 : 1);
        ++p;
      }
    }
    const TensorChain low = lower(s);
    const TensorChain residual = tensor_boundary(d(s)) - inner * sign -
                                 (low + transpose(low) * sign);
    if (!residual.is_zero()) {
      report.fail("simplex " + s.to_string() + " residual " +
                  residual.to_string());
      return report;
    }
  }
  return report;
}

/// A ℤ/2 cochain of degree p: one bit per p-simplex, in Σ_p order.
struct Mod2Cochain {
  int p = 0;
  std::vector<std::uint8_t> values;

  static Mod2Cochain zero(const SimplicialComplex& sigma, int p) {
    return {p, std::vector<std::uint8_t>(sigma.of_dimension(p).size(), 0)};
  }
  static Mod2Cochain indicator(const SimplicialComplex& sigma,
                               const std::vector<VertexSet>& support) {
    if (support.empty()) throw std::invalid_argument("empty support");
    const int p = support.front().size() - 1;
    Mod2Cochain c = zero(sigma, p);
    for (VertexSet s : support) {
      if (s.size() != p + 1) {
        throw std::invalid_argument("support mixes degrees");
      }
      c.values[sigma.index_of(s)] ^= 1;
    }
    return c;
  }

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(),
                       [](std::uint8_t x) { return x == 0; });
  }
  std::vector<VertexSet> support(const SimplicialComplex& sigma) const {
    std::vector<VertexSet> out;
    const auto& basis = sigma.of_dimension(p);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j]) out.push_back(basis[j]);
    }
    return out;
  }
  /// u(σ), zero when σ has the wrong size.
  std::uint8_t at(const SimplicialComplex& sigma, VertexSet s) const {
    if (s.size() != p + 1 || !sigma.contains(s)) return 0;
    return values[sigma.index_of(s)];
  }

  friend Mod2Cochain operator+(Mod2Cochain a, const Mod2Cochain& b) {
    if (a.p != b.p || a.values.size() != b.values.size()) {
      throw std::invalid_argument("adding cochains of different degrees");
    }
    for (std::size_t j = 0; j < a.values.size(); ++j) a.values[j] ^= b.values[j];
    return a;
  }
  friend bool operator==(const Mod2Cochain&, const Mod2Cochain&) = default;
};

/// δu(τ) = u(∂τ) mod 2.
inline Mod2Cochain coboundary(const SimplicialComplex& sigma,
                              const Mod2Cochain& u) {
  Mod2Cochain out = Mod2Cochain::zero(sigma, u.p + 1);
  const auto& targets = sigma.of_dimension(u.p + 1);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    std::uint8_t s = 0;
    for (int v : targets[j]) s ^= u.at(sigma, targets[j].without(v));
    out.values[j] = s;
  }
  return out;
}

/// (u ⌣ v)(σ) = (u ⊗ v) Δ(σ) mod 2 for a coproduct Δ of degree i.
inline Mod2Cochain cup_with(const SimplicialComplex& sigma,
                            const Mod2Cochain& u, const Mod2Cochain& v, int i,
                            const ComplexCoproduct& delta) {
  const int q = u.p + v.p - i;
  Mod2Cochain out = Mod2Cochain::zero(sigma, q);
  if (q < 0) return out;
  const auto& targets = sigma.of_dimension(q);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    unsigned s = 0;
    const TensorChain value = delta(targets[j]);
    for (const auto& t : value.terms()) {
      if ((t.coef & 1) == 0) continue;
      s ^= u.at(sigma, t.left) & v.at(sigma, t.right);
    }
    out.values[j] = static_cast<std::uint8_t>(s & 1);
  }
  return out;
}

/// u ⌣_i^U v.
inline Mod2Cochain cup_i(const Mod2Cochain& u, const Mod2Cochain& v,
                         const SigmaConsistentSet& set, int i) {
  return cup_with(set.complex(), u, v, i, delta_complex(set, i));
}

/// Steenrod's classical Δ_i on each simplex.
inline ComplexCoproduct delta_complex_classical(const SimplicialComplex& sigma,
                                                int i) {
  const Coproduct d = delta_classical(std::max(sigma.n(), 0), i);
  return [d](VertexSet s) { return d(s); };
}

namespace detail {

using Bits = std::vector<std::uint8_t>;

/// Incremental row echelon basis over ℤ/2 that remembers, for each stored
/// row, which tagged inputs were combined to produce it.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width) {}

  /// Reduces `v` against the basis; returns the remainder and accumulates
  /// the tags used into `used`.
  Bits reduce(Bits v, Bits* used = nullptr) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (v[pivots_[r]]) {
        for (std::size_t j = 0; j < width_; ++j) v[j] ^= rows_[r][j];
        if (used) xor_into(*used, tags_[r]);
      }
    }
    return v;
  }

  /// Adds v if independent; `tag` records its provenance.
  bool insert(const Bits& v, Bits tag) {
    Bits used(tag.size(), 0);
    Bits rest = reduce(v, &used);
    auto it = std::find(rest.begin(), rest.end(), 1);
    if (it == rest.end()) return false;
    xor_into(tag, used);
    const std::size_t pivot = static_cast<std::size_t>(it - rest.begin());
    // Keep rows fully reduced on their pivot columns.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][pivot]) {
        for (std::size_t j = 0; j < width_; ++j) rows_[r][j] ^= rest[j];
        xor_into(tags_[r], tag);
      }
    }
    rows_.push_back(std::move(rest));
    pivots_.push_back(pivot);
    tags_.push_back(std::move(tag));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  static void xor_into(Bits& a, const Bits& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t j = 0; j < b.size(); ++j) a[j] ^= b[j];
  }

  std::size_t width_;
  std::vector<Bits> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Bits> tags_;
};

/// Kernel of the map C^p -> C^{p+1}, one basis vector per free column,
/// free columns taken in Σ_p order.
inline std::vector<Bits> cocycle_basis(const SimplicialComplex& sigma, int p) {
  const std::size_t cols = sigma.of_dimension(p).size();
  const auto& rows_of = sigma.of_dimension(p + 1);
  std::vector<Bits> m;
  for (VertexSet t : rows_of) {
    Bits row(cols, 0);
    for (int v : t) row[sigma.index_of(t.without(v))] ^= 1;
    m.push_back(std::move(row));
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t sel = rank;
    while (sel < m.size() && !m[sel][c]) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t j = 0; j < cols; ++j) m[r][j] ^= m[rank][j];
      }
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : pivot_cols) is_pivot[c] = 1;
  std::vector<Bits> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Bits v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      if (m[r][f]) v[pivot_cols[r]] = 1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// H^p(Σ; ℤ/2) with fixed cocycle representatives.
struct Mod2CohomologyBasis {
  int p = 0;
  std::vector<Mod2Cochain> representatives;
  std::vector<Mod2Cochain> coboundary_basis;
  std::size_t dimension() const { return representatives.size(); }
};

inline Mod2CohomologyBasis cohomology_mod2(const SimplicialComplex& sigma,
                                           int p) {
  Mod2CohomologyBasis out;
  out.p = p;
  const std::size_t width = sigma.of_dimension(p).size();
  if (p < 0 || width == 0) return out;
  detail::EchelonBasis basis(width);
  for (const VertexSet s : sigma.of_dimension(p - 1)) {
    const Mod2Cochain b = coboundary(sigma, Mod2Cochain::indicator(sigma, {s}));
    if (basis.insert(b.values, {})) out.coboundary_basis.push_back(b);
  }
  for (const auto& z : detail::cocycle_basis(sigma, p)) {
    if (basis.insert(z, {})) out.representatives.push_back({p, z});
  }
  return out;
}

/// Coordinates of the class of a cocycle in the representative basis.
inline std::vector<std::uint8_t> class_coordinates(
    const SimplicialComplex& sigma, const Mod2CohomologyBasis& h,
    const Mod2Cochain& z) {
  if (z.p != h.p) throw std::invalid_argument("degree mismatch");
  if (!coboundary(sigma, z).is_zero()) {
    throw std::invalid_argument("representative is not a cocycle");
  }
  const std::size_t width = sigma.of_dimension(h.p).size();
  const std::size_t k = h.dimension();
  if (width == 0) return {};
  detail::EchelonBasis basis(width);
  for (const auto& b : h.coboundary_basis) {
    basis.insert(b.values, detail::Bits(k, 0));
  }
  for (std::size_t j = 0; j < k; ++j) {
    detail::Bits tag(k, 0);
    tag[j] = 1;
    basis.insert(h.representatives[j].values, tag);
  }
  detail::Bits used(k, 0);
  const detail::Bits rest = basis.reduce(z.values, &used);
  if (std::find(rest.begin(), rest.end(), 1) != rest.end()) {
    throw std::logic_error("cocycle outside the span of the cohomology basis");
  }
  used.resize(k, 0);
  return used;
}

/// The matrix of [u] ↦ [u ⌣ u] on the representative basis of H^p: column j
/// holds the coordinates of the image of the j-th basis class.
using Mod2Matrix = std::vector<std::vector<std::uint8_t>>;

inline Mod2Matrix square_matrix(const SimplicialComplex& sigma, int i, int p,
                                const ComplexCoproduct& delta) {
  const Mod2CohomologyBasis source = cohomology_mod2(sigma, p);
  const Mod2CohomologyBasis target = cohomology_mod2(sigma, 2 * p - i);
  Mod2Matrix columns;
  for (const auto& u : source.representatives) {
    const Mod2Cochain w = cup_with(sigma, u, u, i, delta);
    columns.push_back(target.dimension() == 0
                          ? std::vector<std::uint8_t>{}
                          : class_coordinates(sigma, target, w));
  }
  return columns;
}

/// Sq_i^U[u] = [u ⌣_i^U u], in coordinates of H^{2p-i}.
inline std::vector<std::uint8_t> steenrod_square(const SigmaConsistentSet& set,
                                                 int i,
                                                 const Mod2Cochain& u) {
  const SimplicialComplex& sigma = set.complex();
  if (!coboundary(sigma, u).is_zero()) {
    throw std::invalid_argument("representative is not a cocycle");
  }
  const Mod2CohomologyBasis target = cohomology_mod2(sigma, 2 * u.p - i);
  if (target.dimension() == 0) return {};
  return class_coordinates(sigma, target, cup_i(u, u, set, i));
}

inline Mod2Matrix steenrod_square_matrix(const SigmaConsistentSet& set, int i,
                                         int p) {
  return square_matrix(set.complex(), i, p, delta_complex(set, i));
}

struct SqInvarianceReport {
  CheckReport check{"Sq invariance"};
  std::size_t global_elements = 0;
  std::size_t distinct_restrictions = 0;
  Mod2Matrix matrix;  // the common matrix when the check passes
};

/// Sq_i^U over every restriction U = U′ ∩ Σ_{i+1} of U′ ∈ B([0,n], i+1):
/// the matrices on the basis of H^p agree, and Sq(x+y) = Sq(x) + Sq(y) on
/// every pair of basis classes.
inline SqInvarianceReport sq_invariance_check(
    const SimplicialComplex& sigma, int i, int p,
    std::size_t cap = kDefaultElementCap) {
  SqInvarianceReport out;
  const auto globals = enumerate_bruhat(sigma.n(), i + 1, cap);
  out.global_elements = globals.size();
  std::set<std::vector<VertexSet>> seen;
  const Mod2CohomologyBasis source = cohomology_mod2(sigma, p);
  bool have_reference = false;
  for (const ConsistentSet& g : globals) {
    const SigmaConsistentSet u = SigmaConsistentSet::restriction(sigma, g);
    if (!seen.insert(u.members()).second) continue;
    ++out.check.cases;
    const Mod2Matrix m = steenrod_square_matrix(u, i, p);
    if (!have_reference) {
      out.matrix = m;
      have_reference = true;
    } else if (m != out.matrix) {
      out.check.fail("Sq_" + std::to_string(i) + " differs for U′=" +
                     g.to_string());
    }
    for (std::size_t a = 0; a < source.dimension(); ++a) {
      for (std::size_t b = a + 1; b < source.dimension(); ++b) {
        const Mod2Cochain x = source.representatives[a];
        const Mod2Cochain y = source.representatives[b];
        auto sum = steenrod_square(u, i, x + y);
        const auto sx = steenrod_square(u, i, x);
        const auto sy = steenrod_square(u, i, y);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] ^= sx[j] ^ sy[j];
        if (std::find(sum.begin(), sum.end(), 1) != sum.end()) {
          out.check.fail("Sq not additive on classes " + std::to_string(a) +
                         ", " + std::to_string(b) + " for U′=" + g.to_string());
        }
      }
    }
  }
  out.distinct_restrictions = seen.size();
  return out;
}

}  // namespace bruhat
