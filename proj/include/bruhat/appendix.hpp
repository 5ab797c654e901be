#pragma once

// The sign identities behind the facet decomposition, the complement
// identity and the comparison with Steenrod's signs, checked exhaustively.
// All counts are taken in the original labels of the support S, which plays
// the role of [0,n] with n+1 = |S|.

#include <string>
#include <vector>

#include "bruhat/coproduct.hpp"
#include "bruhat/signs.hpp"
#include "bruhat/vertex_set.hpp"

namespace bruhat {

namespace detail {

inline std::string lab(VertexSet l, VertexSet a, VertexSet b) {
  return "L=" + l.to_string() + " A=" + a.to_string() + " B=" + b.to_string();
}

/// Sign of the shuffle listing `first` in increasing order, then `second`.
inline int shuffle_sign(VertexSet first, VertexSet second) {
  std::vector<int> w = first.elements();
  for (int x : second) w.push_back(x);
  int inv = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (std::size_t q = p + 1; q < w.size(); ++q) inv += w[p] > w[q];
  }
  return inv & 1;
}

}  // namespace detail

/// Every ordered partition (L, A, B) of every nonempty S ⊆ [0,n_max], with
/// every k to which a lemma applies.
inline CheckReport appendix_sign_suite(int n_max) {
  CheckReport report{"appendix sign lemmas, n_max=" + std::to_string(n_max)};
  if (n_max < 0 || n_max > 12) {
    throw std::invalid_argument("appendix suite needs 0 <= n_max <= 12");
  }
  auto fail = [&](const char* lemma, VertexSet l, VertexSet a, VertexSet b,
                  int k) {
    std::string where = std::string(lemma) + " fails at " +
                        detail::lab(l, a, b);
    if (k >= 0) where += " k=" + std::to_string(k);
    report.fail(where);
  };

  for (VertexSet s : nonempty_subsets(VertexSet::full(n_max))) {
    const int size = s.size();
    const std::vector<int> verts = s.elements();
    // Base-3 digits of code assign each vertex of S to L, A or B.
    int total = 1;
    for (int p = 0; p < size; ++p) total *= 3;
    for (int code = 0; code < total; ++code) {
      VertexSet l;
      VertexSet a;
      VertexSet b;
      for (int p = 0, c = code; p < size; ++p, c /= 3) {
        const int v = verts[p];
        if (c % 3 == 0) l = l.with(v);
        else if (c % 3 == 1) a = a.with(v);
        else b = b.with(v);
      }
      const int nl = l.size();
      const int e = epsilon(l, a, b, size);

      ++report.cases;
      // Swapping the tensor factors.
      {
        const int lhs = epsilon(l, b, a, size);
        const int rhs = e + (nl + a.size() + 1) * (nl + b.size() + 1) + nl + 1;
        if ((lhs & 1) != (rhs & 1)) fail("swap lemma", l, a, b, -1);
      }

      // Cut points at L: A and B must be the alternating open gaps.
      if (nl >= 1) {
        VertexSet even_gaps;
        VertexSet odd_gaps;
        for (int v : s - l) {
          if (l.count_less(v) % 2 == 0) {
            even_gaps = even_gaps.with(v);
          } else {
            odd_gaps = odd_gaps.with(v);
          }
        }
        if (a == even_gaps && b == odd_gaps) {
          ++report.cases;
          const int i = nl - 1;
          const int n = size - 1;
          const int sign_eps =
              (detail::shuffle_sign(l | a, b) + i * n) & 1;
          const int via_lemma = (e + nl * (nl - 1) / 2 + nl + 1) & 1;
          const int via_floor = (e + i / 2) & 1;
          if (sign_eps != via_lemma || sign_eps != via_floor) {
            fail("partition-sign lemma", l, a, b, -1);
          }
        }
      }

      for (int k : s) {
        ++report.cases;
        const int lgt = l.count_greater(k);
        const int slt = s.count_less(k);
        if (l.contains(k)) {
          const VertexSet lk = l.without(k);
          // k moves into B.
          const int lhs1 = e + (l | a).count_less(k);
          const int rhs1 = epsilon(lk, a, b.with(k), size) + lgt;
          if ((lhs1 & 1) != (rhs1 & 1)) fail("first L lemma", l, a, b, k);
          // k moves into A.
          const int lhs2 = e + (l | b).count_less(k) + nl + a.size() + 1;
          const int rhs2 = epsilon(lk, a.with(k), b, size) + lgt + 1;
          if ((lhs2 & 1) != (rhs2 & 1)) fail("second L lemma", l, a, b, k);
        } else if (a.contains(k)) {
          const int lhs = e + (l | a).count_less(k);
          const int rhs = epsilon(l, a.without(k), b, size - 1) + nl + slt + 1;
          if ((lhs & 1) != (rhs & 1)) fail("A lemma", l, a, b, k);
        } else {
          const int lhs = e + nl + a.size() + (l | b).count_less(k) + 1;
          const int rhs = epsilon(l, a, b.without(k), size - 1) + nl + slt + 1;
          if ((lhs & 1) != (rhs & 1)) fail("B lemma", l, a, b, k);
        }
      }
      if (!report.passed) return report;
    }
  }
  return report;
}

}  // namespace bruhat
