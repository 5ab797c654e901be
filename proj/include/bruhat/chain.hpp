#pragma once

// Integral chains on a simplex and on its tensor square, with the alternating
// boundary, the Koszul-signed tensor boundary and the symmetry T.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bruhat/vertex_set.hpp"
#include "bruhat/zonotope.hpp"

namespace bruhat {

using Coefficient = std::int64_t;

namespace detail {
inline Coefficient checked_add(Coefficient a, Coefficient b) {
  Coefficient out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("chain coefficient overflow");
  }
  return out;
}
inline Coefficient checked_mul(Coefficient a, Coefficient b) {
  Coefficient out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("chain coefficient overflow");
  }
  return out;
}
inline Coefficient sign_of_parity(int parity) {
  return (parity & 1) ? -1 : 1;
}
}  // namespace detail

/// Degree of a face: |X| - 1.
constexpr int degree(VertexSet x) { return x.size() - 1; }

/// A finitely supported integer combination of nonempty faces.
class Chain {
 public:
  using Term = std::pair<VertexSet, Coefficient>;

  Chain() = default;
  explicit Chain(VertexSet face, Coefficient coef = 1) {
    add(face, coef);
  }

  void add(VertexSet face, Coefficient coef) {
    if (face.empty()) throw std::invalid_argument("empty face in a chain");
    if (coef == 0) return;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), face,
        [](const Term& t, VertexSet key) { return t.first < key; });
    if (it != terms_.end() && it->first == face) {
      it->second = detail::checked_add(it->second, coef);
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {face, coef});
    }
  }

  /// Terms in canonical (degree, lex) order, never with a zero coefficient.
  const std::vector<Term>& terms() const& { return terms_; }
  // By value on temporaries, so `for (t : f().terms())` does not dangle.
  std::vector<Term> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<Term> terms_;
};

/// ∂{v_0 < ... < v_q} = Σ_p (-1)^p {..., v̂_p, ...}; vertices map to 0.
inline Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [face, coef] : c.terms()) {
    if (face.size() < 2) continue;
    int p = 0;
    for (int v : face) {
      out.add(face.without(v), (p & 1) ? -coef : coef);
      ++p;
    }
  }
  return out;
}

/// One signed basis element X ⊗ Y.
struct TensorTerm {
  VertexSet left;
  VertexSet right;
  Coefficient coef = 0;

  int degree() const { return bruhat::degree(left) + bruhat::degree(right); }
  friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

namespace detail {
inline bool basis_less(const TensorTerm& a, const TensorTerm& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  if (a.left != b.left) return a.left < b.left;
  return a.right < b.right;
}
}  // namespace detail

/// A finitely supported integer combination of X ⊗ Y with X, Y nonempty.
///
/// Terms are kept in canonical order (total degree, then left factor, then
/// right factor) with no zero coefficients, so equality is structural.
class TensorChain {
 public:
  TensorChain() = default;

  /// Builds from arbitrary terms, merging duplicates and dropping zeros.
  static TensorChain from_terms(std::vector<TensorTerm> terms) {
    TensorChain out;
    out.terms_ = std::move(terms);
    out.normalize();
    return out;
  }
  static TensorChain single(VertexSet left, VertexSet right,
                            Coefficient coef = 1) {
    return from_terms({{left, right, coef}});
  }

  const std::vector<TensorTerm>& terms() const& { return terms_; }
  std::vector<TensorTerm> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of left ⊗ right.
  Coefficient coefficient(VertexSet left, VertexSet right) const {
    const TensorTerm key{left, right, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               detail::basis_less);
    if (it != terms_.end() && it->left == left && it->right == right) {
      return it->coef;
    }
    return 0;
  }

  TensorChain& operator+=(const TensorChain& other) {
    if (other.terms_.empty()) return *this;
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    normalize();
    return *this;
  }
  TensorChain& operator-=(const TensorChain& other) {
    return *this += other * Coefficient{-1};
  }
  friend TensorChain operator+(TensorChain a, const TensorChain& b) {
    return a += b;
  }
  friend TensorChain operator-(TensorChain a, const TensorChain& b) {
    return a -= b;
  }
  friend TensorChain operator*(TensorChain a, Coefficient s) {
    if (s == 0) return {};
    for (auto& t : a.terms_) t.coef = detail::checked_mul(t.coef, s);
    return a;
  }
  friend TensorChain operator*(Coefficient s, TensorChain a) {
    return std::move(a) * s;
  }
  TensorChain operator-() const { return *this * Coefficient{-1}; }

  friend bool operator==(const TensorChain&, const TensorChain&) = default;

  /// "012⊗01 - 02⊗012 + 012⊗12"; "0" for the zero chain.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      const Coefficient mag = t.coef < 0 ? -t.coef : t.coef;
      if (first) {
        if (t.coef < 0) out += "-";
      } else {
        out += t.coef < 0 ? " - " : " + ";
      }
      if (mag != 1) out += std::to_string(mag) + "*";
      out += t.left.to_string() + "⊗" + t.right.to_string();
      first = false;
    }
    return out;
  }

 private:
  void normalize() {
    for (const auto& t : terms_) {
      if (t.left.empty() || t.right.empty()) {
        throw std::invalid_argument("empty factor in a tensor term");
      }
    }
    std::sort(terms_.begin(), terms_.end(), detail::basis_less);
    std::vector<TensorTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!merged.empty() && merged.back().left == t.left &&
          merged.back().right == t.right) {
        merged.back().coef = detail::checked_add(merged.back().coef, t.coef);
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const TensorTerm& t) { return t.coef == 0; });
    terms_ = std::move(merged);
  }

  std::vector<TensorTerm> terms_;
};

/// ∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y.
inline TensorChain tensor_boundary(const TensorChain& t) {
  std::vector<TensorTerm> out;
  for (const auto& term : t.terms()) {
    if (term.left.size() >= 2) {
      int p = 0;
      for (int v : term.left) {
        out.push_back({term.left.without(v), term.right,
                       (p & 1) ? -term.coef : term.coef});
        ++p;
      }
    }
    if (term.right.size() >= 2) {
      const Coefficient base =
          (degree(term.left) & 1) ? -term.coef : term.coef;
      int p = 0;
      for (int v : term.right) {
        out.push_back({term.left, term.right.without(v),
                       (p & 1) ? -base : base});
        ++p;
      }
    }
  }
  return TensorChain::from_terms(std::move(out));
}

/// T(x ⊗ y) = (-1)^{|x||y|} y ⊗ x.
inline TensorChain transpose(const TensorChain& t) {
  std::vector<TensorTerm> out;
  out.reserve(t.size());
  for (const auto& term : t.terms()) {
    const int parity = degree(term.left) * degree(term.right);
    out.push_back({term.right, term.left,
                   (parity & 1) ? -term.coef : term.coef});
  }
  return TensorChain::from_terms(std::move(out));
}

/// L = X ∩ Y, A = X \ Y, B = Y \ X, support X ∪ Y.
inline ZFace face_of_term(VertexSet x, VertexSet y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("tensor factors must be nonempty");
  }
  return {x & y, x - y, x | y};
}

/// (L ∪ A, L ∪ B); rejects the two vertices ∅ and S of the zonotope.
inline std::pair<VertexSet, VertexSet> term_of_face(const ZFace& f) {
  const VertexSet x = f.generators | f.initial_vertex;
  const VertexSet y = f.generators | f.complement();
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("the vertices ∅ and S have no tensor term");
  }
  return {x, y};
}

}  // namespace bruhat
