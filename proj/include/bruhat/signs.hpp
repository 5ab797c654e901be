#pragma once

// The sign ε of a cube term and the sign of an overlapping partition.

#include <stdexcept>
#include <vector>

#include "bruhat/vertex_set.hpp"

namespace bruhat {

/// Disjoint L, A, B; support_size stands in for n+1.
struct SignArgs {
  VertexSet l;
  VertexSet a;
  VertexSet b;
  int support_size = 0;

  static SignArgs of(VertexSet l, VertexSet a, VertexSet b) {
    return {l, a, b, (l | a | b).size()};
  }
  bool valid() const {
    return l.is_disjoint_from(a) && l.is_disjoint_from(b) &&
           a.is_disjoint_from(b) &&
           support_size == l.size() + a.size() + b.size();
  }
};

/// ε(L∪A ⊗ L∪B) = Σ_{b∈B} |A|_{<b} + Σ_{l∈L} |L|_{<l} + (n+1)|A|  (mod 2).
constexpr int epsilon(VertexSet l, VertexSet a, VertexSet b,
                      int support_size) {
  int s = 0;
  for (int x : b) s += a.count_less(x);
  const int m = l.size();
  s += m * (m - 1) / 2;
  s += support_size * a.size();
  return s & 1;
}

inline int epsilon(const SignArgs& args) {
  if (!args.valid()) {
    throw std::invalid_argument("sign arguments must be disjoint and sized");
  }
  return epsilon(args.l, args.a, args.b, args.support_size);
}

/// One term of the classical cup-i coproduct on a face of size m+1, written
/// in local labels [0,m]: left = L_0 ∪ L_2 ∪ ..., right = L_1 ∪ L_3 ∪ ...
struct PartitionTerm {
  VertexSet left;
  VertexSet right;
  int sign = 0;  // ε(𝓛) mod 2
};

/// All overlapping partitions of [0,m] into i+2 intervals, cut at
/// 0 <= l_1 < ... < l_{i+1} <= m, with ε(𝓛) = sign(w_𝓛) + i·m.
inline std::vector<PartitionTerm> overlapping_partitions(int m, int i) {
  std::vector<PartitionTerm> out;
  if (i < 0 || m < 0) return out;
  for (VertexSet cuts : subsets_of_size(VertexSet::full(m), i + 1)) {
    std::vector<int> pts{0};
    for (int c : cuts) pts.push_back(c);
    pts.push_back(m);
    VertexSet left;
    VertexSet right;
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
      const VertexSet piece = VertexSet::interval(pts[p], pts[p + 1]);
      if (p % 2 == 0) {
        left = left | piece;
      } else {
        right = right | piece;
      }
    }
    // w lists left first, then right \ left; inversions are pairs x > b.
    int inversions = 0;
    for (int b : right - left) inversions += left.count_greater(b);
    out.push_back({left, right, (inversions + i * m) & 1});
  }
  return out;
}

}  // namespace bruhat
