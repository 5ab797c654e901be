#pragma once

// Cup-i coproducts: Δ_i^U from a consistent set, the classical Steenrod Δ_i,
// single-face coproducts Δ_i^F, reoriented-chain coproducts Δ_{i+1}^W, and
// exact checks of the identities relating them.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/bruhat.hpp"
#include "bruhat/chain.hpp"
#include "bruhat/signs.hpp"
#include "bruhat/vertex_set.hpp"
#include "bruhat/zonotope.hpp"

namespace bruhat {

/// Constant-time membership for a consistent set over a small ground set.
class MembershipIndex {
 public:
  explicit MembershipIndex(const ConsistentSet& u) : u_(u) {
    if (u.n() <= kDenseLimit) {
      dense_.assign(std::size_t{1} << (u.n() + 1), 0);
      for (VertexSet k : u.members()) dense_[k.bits()] = 1;
    }
  }
  bool operator()(VertexSet k) const {
    if (!dense_.empty()) return dense_[k.bits()] != 0;
    return u_.contains(k);
  }
  const ConsistentSet& set() const { return u_; }

 private:
  static constexpr int kDenseLimit = 16;
  ConsistentSet u_;
  std::vector<char> dense_;
};

/// The value of Δ_i^U on the face S, written in the labels of [0,n]: one term
/// per (i+1)-subset L of S, with initial vertex taken inside S.
template <typename Membership>
TensorChain delta_on_face(const Membership& member, int i, VertexSet s) {
  if (i < 0 || s.size() <= i) return {};
  std::vector<TensorTerm> terms;
  for (VertexSet l : subsets_of_size(s, i + 1)) {
    const VertexSet a = initial_vertex_in(member, l, s);
    const VertexSet b = s - (l | a);
    const int eps = epsilon(l, a, b, s.size());
    terms.push_back({l | a, l | b, eps ? -1 : 1});
  }
  return TensorChain::from_terms(std::move(terms));
}

enum class CoproductKind {
  kZero,
  kFromU,
  kClassical,
  kFromFace,
  kFromReorientedChain,
  kTabulated,
  kDerived,
};

/// A linear map C(Δ^n) -> C(Δ^n) ⊗ C(Δ^n) of degree `degree`, given by its
/// values on the nonempty faces of [0,n].
class Coproduct {
 public:
  using Eval = std::function<TensorChain(VertexSet)>;

  Coproduct(CoproductKind kind, int n, int degree, Eval eval)
      : kind_(kind), n_(n), degree_(degree), eval_(std::move(eval)) {
    if (n < 0 || n > kMaxVertex) throw std::invalid_argument("n out of range");
  }

  static Coproduct zero(int n, int degree) {
    return {CoproductKind::kZero, n, degree,
            [](VertexSet) { return TensorChain{}; }};
  }

  CoproductKind kind() const { return kind_; }
  int n() const { return n_; }
  int degree() const { return degree_; }

  TensorChain operator()(VertexSet face) const {
    if (face.empty() || !face.is_subset_of(VertexSet::full(n_))) {
      throw std::invalid_argument("face " + face.to_string() +
                                  " is not a face of the " +
                                  std::to_string(n_) + "-simplex");
    }
    return eval_(face);
  }

  TensorChain apply(const Chain& c) const {
    TensorChain out;
    for (const auto& [face, coef] : c.terms()) out += (*this)(face) * coef;
    return out;
  }

  /// Precomputes every face value; lookups then cost one vector access.
  Coproduct tabulated() const {
    if (n_ > 20) return *this;
    auto table = std::make_shared<std::vector<TensorChain>>(
        std::size_t{1} << (n_ + 1));
    for (VertexSet s : nonempty_subsets(VertexSet::full(n_))) {
      (*table)[s.bits()] = eval_(s);
    }
    return {CoproductKind::kTabulated, n_, degree_,
            [table](VertexSet s) { return (*table)[s.bits()]; }};
  }

 private:
  CoproductKind kind_;
  int n_;
  int degree_;
  Eval eval_;
};

inline Coproduct operator+(const Coproduct& a, const Coproduct& b) {
  if (a.n() != b.n() || a.degree() != b.degree()) {
    throw std::invalid_argument("adding coproducts of different shapes");
  }
  return {CoproductKind::kDerived, a.n(), a.degree(),
          [a, b](VertexSet s) { return a(s) + b(s); }};
}
inline Coproduct operator*(Coefficient c, const Coproduct& a) {
  return {CoproductKind::kDerived, a.n(), a.degree(),
          [a, c](VertexSet s) { return a(s) * c; }};
}
inline Coproduct operator-(const Coproduct& a, const Coproduct& b) {
  return a + Coefficient{-1} * b;
}
/// T∘Δ.
inline Coproduct transposed(const Coproduct& a) {
  return {CoproductKind::kDerived, a.n(), a.degree(),
          [a](VertexSet s) { return transpose(a(s)); }};
}

/// Δ_i^U for U ∈ B([0,n], i+1).
inline Coproduct delta_from_U(const ConsistentSet& u, int i) {
  if (u.level() != i + 1) {
    throw std::invalid_argument(
        "Δ_" + std::to_string(i) + " needs an element of level " +
        std::to_string(i + 1) + ", got level " + std::to_string(u.level()));
  }
  if (u.n() < i) {
    throw std::invalid_argument("Δ_i^U needs n >= i");
  }
  auto member = std::make_shared<MembershipIndex>(u);
  return {CoproductKind::kFromU, u.n(), i, [member, i](VertexSet s) {
            return delta_on_face(*member, i, s);
          }};
}

/// Δ_i^∅ on the n-simplex; Δ_{-1} is zero.
inline Coproduct delta_empty(int n, int i) {
  if (i < 0) return Coproduct::zero(n, i);
  return delta_from_U(ConsistentSet::empty(n, i + 1), i);
}

/// Steenrod's Δ_i: a sum over overlapping partitions of each face.
inline Coproduct delta_classical(int n, int i) {
  if (i < -1) throw std::invalid_argument("classical Δ_i needs i >= -1");
  if (i < 0) return Coproduct::zero(n, i);
  return {CoproductKind::kClassical, n, i, [i](VertexSet s) {
            std::vector<TensorTerm> terms;
            for (const auto& p : overlapping_partitions(s.size() - 1, i)) {
              terms.push_back({expand(p.left, s), expand(p.right, s),
                               p.sign ? -1 : 1});
            }
            return TensorChain::from_terms(std::move(terms));
          }};
}

/// Δ_i^F for a face F of Z([0,n], n+1) with |L| = i+1. On S the value is the
/// single term of F with A, B cut down to S, and zero when L ⊄ S.
inline Coproduct delta_from_face(const ZFace& f, int i) {
  if (f.generators.size() != i + 1) {
    throw std::invalid_argument("Δ_i^F needs |L| = i+1");
  }
  if (!f.valid() || f.support != VertexSet::full(f.support.max())) {
    throw std::invalid_argument("face must live in Z([0,n], n+1)");
  }
  const int n = f.support.max();
  return {CoproductKind::kFromFace, n, i, [f](VertexSet s) {
            if (!f.generators.is_subset_of(s)) return TensorChain{};
            const VertexSet a = f.initial_vertex & s;
            const VertexSet b = f.complement() & s;
            const int eps = epsilon(f.generators, a, b, s.size());
            return TensorChain::single(f.generators | a, f.generators | b,
                                       eps ? -1 : 1);
          }};
}

/// Δ_{i+1}^W = Σ_{L ∉ U} Δ^{F_L} - Σ_{L ∈ U} Δ^{F_L} for a reoriented chain
/// from U ∈ B([0,n], i+1) to its complement.
inline Coproduct delta_from_reoriented_chain(const ReorientedChain& w, int i) {
  const ConsistentSet& u = w.base;
  if (u.level() != i + 1) {
    throw std::invalid_argument("reoriented chain base has the wrong level");
  }
  ConsistentSet v = u;
  for (const auto& step : w.steps) v = v.toggled(step.subset);
  if (!(v == u.complement())) {
    throw std::invalid_argument("reoriented chain does not end at complement");
  }
  std::vector<std::pair<Coproduct, Coefficient>> parts;
  for (const auto& step : w.steps) {
    parts.emplace_back(delta_from_face(step.face, i + 1),
                       step.removal ? -1 : 1);
  }
  return {CoproductKind::kFromReorientedChain, u.n(), i + 1,
          [parts](VertexSet s) {
            TensorChain out;
            for (const auto& [d, c] : parts) out += d(s) * c;
            return out;
          }};
}

/// Δ(∂S).
inline TensorChain delta_of_boundary(const Coproduct& d, VertexSet s) {
  if (s.size() < 2) return {};
  std::vector<TensorTerm> out;
  int p = 0;
  for (int v : s) {
    const TensorChain face = d(s.without(v));
    for (TensorTerm t : face.terms()) {
      if (p & 1) t.coef = -t.coef;
      out.push_back(t);
    }
    ++p;
  }
  return TensorChain::from_terms(std::move(out));
}

/// (∂∘H - (-1)^deg H∘∂)(S).
inline TensorChain homotopy_lhs(const Coproduct& h, VertexSet s) {
  std::vector<TensorTerm> out = tensor_boundary(h(s)).terms();
  // The sign on face s\v is (-1)^p from ∂, times -(-1)^deg.
  const int base = (h.degree() & 1) ? 0 : 1;
  if (s.size() >= 2) {
    int p = 0;
    for (int v : s) {
      const TensorChain face = h(s.without(v));
      for (TensorTerm t : face.terms()) {
        if ((p + base) & 1) t.coef = -t.coef;
        out.push_back(t);
      }
      ++p;
    }
  }
  return TensorChain::from_terms(std::move(out));
}

/// ((1 + (-1)^i T) Δ_{i-1})(S) where i = lower.degree() + 1.
inline TensorChain homotopy_rhs(const Coproduct& lower, VertexSet s) {
  const TensorChain d = lower(s);
  const int i = lower.degree() + 1;
  return d + transpose(d) * ((i & 1) ? Coefficient{-1} : Coefficient{1});
}

/// Outcome of an exact identity check, with the first failure spelled out.
struct CheckReport {
  explicit CheckReport(std::string label = {}) : name(std::move(label)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string first_failure;

  void fail(const std::string& message) {
    if (passed) first_failure = message;
    passed = false;
  }
  void merge(const CheckReport& other) {
    cases += other.cases;
    if (!other.passed) fail(other.first_failure);
  }
};

namespace detail {

/// Dense accumulator over pairs (X, Y) of subsets of [0,n], small n only.
class PairScratch {
 public:
  explicit PairScratch(int n) : shift_(n + 1) {
    cells_.assign(std::size_t{1} << (2 * shift_), 0);
  }
  static bool fits(int n) { return n <= 7; }

  void add(const TensorChain& t, Coefficient sign) {
    for (const auto& term : t.terms()) add(term.left, term.right, term.coef * sign);
  }
  void add(VertexSet x, VertexSet y, Coefficient c) {
    const std::size_t k = (x.bits() << shift_) | y.bits();
    if (cells_[k] == 0) touched_.push_back(k);
    cells_[k] += c;
  }
  /// True iff everything added cancels; resets the scratch either way.
  bool drain() {
    bool zero = true;
    for (std::size_t k : touched_) {
      zero = zero && cells_[k] == 0;
      cells_[k] = 0;
    }
    touched_.clear();
    return zero;
  }

 private:
  int shift_;
  std::vector<Coefficient> cells_;
  std::vector<std::size_t> touched_;
};

/// Adds (∂∘H - (-1)^deg H∘∂)(S) - R(S) to the scratch.
inline void add_homotopy_residual(PairScratch& acc, const Coproduct& h,
                                  const Coproduct& rhs, VertexSet s) {
  // ∂ of each term with the Koszul sign, as in tensor_boundary.
  const TensorChain top = h(s);
  for (const auto& t : top.terms()) {
    if (t.left.size() >= 2) {
      int p = 0;
      for (int v : t.left) {
        acc.add(t.left.without(v), t.right, (p++ & 1) ? -t.coef : t.coef);
      }
    }
    if (t.right.size() >= 2) {
      const Coefficient c = (degree(t.left) & 1) ? -t.coef : t.coef;
      int p = 0;
      for (int v : t.right) {
        acc.add(t.left, t.right.without(v), (p++ & 1) ? -c : c);
      }
    }
  }
  if (s.size() >= 2) {
    const int base = (h.degree() & 1) ? 0 : 1;
    int p = 0;
    for (int v : s) {
      acc.add(h(s.without(v)), ((p + base) & 1) ? -1 : 1);
      ++p;
    }
  }
  acc.add(rhs(s), -1);
}

}  // namespace detail

/// Checks ∂∘H - (-1)^deg H∘∂ = R on every face of Δ^n.
inline CheckReport check_homotopy_identity(const Coproduct& h,
                                           const Coproduct& rhs,
                                           const std::string& context) {
  CheckReport report{context};
  std::optional<detail::PairScratch> acc;
  if (detail::PairScratch::fits(h.n())) acc.emplace(h.n());
  for (VertexSet s : nonempty_subsets(VertexSet::full(h.n()))) {
    ++report.cases;
    if (acc) {
      detail::add_homotopy_residual(*acc, h, rhs, s);
      if (acc->drain()) continue;
    }
    const TensorChain lhs = homotopy_lhs(h, s);
    const TensorChain expected = rhs(s);
    if (!(lhs == expected)) {
      const TensorChain residual = lhs - expected;
      report.fail(context + ": face " + s.to_string() + " residual " +
                  residual.to_string());
      return report;
    }
  }
  return report;
}

/// (1 + (-1)^i T) Δ_{i-1}^∅ as a coproduct, tabulated.
inline Coproduct homotopy_target(int n, int i) {
  const Coproduct lower = delta_empty(n, i - 1).tabulated();
  return Coproduct{CoproductKind::kDerived, n, i - 1,
                   [lower](VertexSet s) { return homotopy_rhs(lower, s); }}
      .tabulated();
}

/// LHS - RHS of the homotopy formula for Δ_i^U, face by face.
inline std::vector<std::pair<VertexSet, TensorChain>> homotopy_residual(
    const ConsistentSet& u, int i) {
  const Coproduct d = delta_from_U(u, i).tabulated();
  const Coproduct target = homotopy_target(u.n(), i);
  std::vector<std::pair<VertexSet, TensorChain>> out;
  for (VertexSet s : nonempty_subsets(VertexSet::full(u.n()))) {
    out.emplace_back(s, homotopy_lhs(d, s) - target(s));
  }
  return out;
}

inline CheckReport homotopy_check(const ConsistentSet& u, int i,
                                  const Coproduct& target) {
  return check_homotopy_identity(
      delta_from_U(u, i).tabulated(), target,
      "homotopy formula for U=" + u.to_string() + ", i=" + std::to_string(i) +
          ", n=" + std::to_string(u.n()));
}
inline CheckReport homotopy_check(const ConsistentSet& u, int i) {
  return homotopy_check(u, i, homotopy_target(u.n(), i));
}

/// Compares two coproducts on every face.
inline CheckReport compare_coproducts(const Coproduct& a, const Coproduct& b,
                                      const std::string& context) {
  CheckReport report{context};
  for (VertexSet s : nonempty_subsets(VertexSet::full(a.n()))) {
    ++report.cases;
    const TensorChain x = a(s);
    const TensorChain y = b(s);
    if (!(x == y)) {
      report.fail(context + ": face " + s.to_string() + ": " + x.to_string() +
                  " vs " + y.to_string());
      return report;
    }
  }
  return report;
}

/// The four signed identities between Δ_i^∅, Δ_i^{full} and Steenrod's Δ_i.
inline CheckReport steenrod_comparison(int i, int n) {
  if (i < 0 || n < i) throw std::invalid_argument("need 0 <= i <= n");
  const Coproduct classical = delta_classical(n, i).tabulated();
  const Coproduct t_classical = transposed(classical).tabulated();
  const Coproduct bottom = delta_empty(n, i);
  const Coproduct top = delta_from_U(ConsistentSet::top(n, i + 1), i);
  const std::string at =
      " (i=" + std::to_string(i) + ", n=" + std::to_string(n) + ")";
  auto sgn = [](int e) { return Coefficient{(e & 1) ? -1 : 1}; };
  CheckReport report{"steenrod comparison" + at};
  if (i % 2 == 0) {
    report.merge(compare_coproducts(bottom, sgn(i / 2) * classical,
                                    "Δ^∅ = (-1)^{i/2} Δ_i" + at));
    report.merge(compare_coproducts(top, sgn(i / 2) * t_classical,
                                    "Δ^full = (-1)^{i/2} TΔ_i" + at));
  } else {
    report.merge(compare_coproducts(bottom, sgn((i + 1) / 2) * t_classical,
                                    "Δ^∅ = (-1)^{⌈i/2⌉} TΔ_i" + at));
    report.merge(compare_coproducts(top, sgn(i / 2) * classical,
                                    "Δ^full = (-1)^{⌊i/2⌋} Δ_i" + at));
  }
  return report;
}

/// Δ_i^{complement of U} = (-1)^i T Δ_i^U on every face.
inline CheckReport complement_check(const ConsistentSet& u, int i) {
  const Coproduct d = delta_from_U(u, i);
  const Coproduct c = delta_from_U(u.complement(), i);
  return compare_coproducts(
      c, Coefficient{(i & 1) ? -1 : 1} * transposed(d),
      "complement identity for U=" + u.to_string() + ", i=" +
          std::to_string(i) + ", n=" + std::to_string(u.n()));
}

/// ∂((-1)^{ε(F)} F) split into lower facets, upper facets and contractions.
struct KeyDecomposition {
  TensorChain lower;
  TensorChain upper;
  TensorChain contractions;

  TensorChain total() const { return lower + upper + contractions; }
};

/// Signed term (-1)^{ε(F)} L∪A ⊗ L∪B of a face, or zero for a vertex of the
/// zonotope that has no tensor term.
inline TensorChain signed_term(const ZFace& f) {
  const VertexSet x = f.generators | f.initial_vertex;
  const VertexSet y = f.generators | f.complement();
  if (x.empty() || y.empty()) return {};
  const int eps = epsilon(f.generators, f.initial_vertex, f.complement(),
                          f.support.size());
  return TensorChain::single(x, y, eps ? -1 : 1);
}

/// Lower facets G carry (-1)^{ε(G)}, upper facets H carry (-1)^{ε(H)+1}, and
/// F/k for k ∈ A∪B carries (-1)^{ε(F/k) + k + i} with k read as its position
/// inside the support. Terms with an empty factor vanish.
inline KeyDecomposition term_boundary(const ZFace& f) {
  if (!f.valid() || f.generators.empty()) {
    throw std::invalid_argument("term_boundary needs a face with |L| >= 1");
  }
  if (f.support.size() < 2) {
    throw std::invalid_argument("term_boundary needs a support of size >= 2");
  }
  const int i = f.generators.size() - 1;
  KeyDecomposition out;
  const FacetSplit split = facets(f);
  for (const ZFace& g : split.lower) out.lower += signed_term(g);
  for (const ZFace& h : split.upper) out.upper -= signed_term(h);
  for (int k : f.initial_vertex | f.complement()) {
    const ZFace fk{f.generators, f.initial_vertex.without(k),
                   f.support.without(k)};
    const TensorChain t = signed_term(fk);
    const int parity = f.support.count_less(k) + i;
    out.contractions += t * ((parity & 1) ? Coefficient{-1} : Coefficient{1});
  }
  return out;
}

/// Checks ∂∘Δ_i^F - (-1)^i Δ_i^F∘∂ = Δ_{i-1}^U - Δ_{i-1}^V for the cover
/// U ⋖ V = U ∪ {K} of B([0,n], i), i >= 1.
inline CheckReport covering_homotopy_check(const ConsistentSet& u,
                                           const ConsistentSet& v) {
  if (u.n() != v.n() || u.level() != v.level() || v.size() != u.size() + 1) {
    throw std::invalid_argument("not a covering relation");
  }
  VertexSet k;
  bool found = false;
  for (VertexSet m : v.members()) {
    if (!u.contains(m)) {
      if (found) throw std::invalid_argument("not a covering relation");
      k = m;
      found = true;
    }
  }
  if (!found || !(u.toggled(k) == v)) {
    throw std::invalid_argument("not a covering relation");
  }
  const int i = u.level();
  if (i < 1) throw std::invalid_argument("cover homotopies need level >= 1");
  const Coproduct h = delta_from_face(flip_face(u, k), i).tabulated();
  const Coproduct rhs =
      (delta_from_U(u, i - 1) - delta_from_U(v, i - 1)).tabulated();
  return check_homotopy_identity(
      h, rhs,
      "cover " + u.to_string() + " ⋖ " + v.to_string() + " (i=" +
          std::to_string(i) + ", n=" + std::to_string(u.n()) + ")");
}

/// ∂∘Δ_{i+1}^W - (-1)^{i+1} Δ_{i+1}^W∘∂ = (1 + (-1)^{i+1} T) Δ_i^U.
inline CheckReport reoriented_homotopy_check(const ReorientedChain& w,
                                             int i) {
  const Coproduct h = delta_from_reoriented_chain(w, i).tabulated();
  const Coproduct lower = delta_from_U(w.base, i).tabulated();
  const Coproduct rhs{CoproductKind::kDerived, w.base.n(), i,
                      [lower](VertexSet s) { return homotopy_rhs(lower, s); }};
  return check_homotopy_identity(
      h, rhs,
      "reoriented homotopy for U=" + w.base.to_string() +
          ", i=" + std::to_string(i));
}

}  // namespace bruhat
