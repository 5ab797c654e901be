#pragma once

// Exhaustive search for coproducts satisfying the homotopy formula with a
// minimal number of terms on every face, at desk scale.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bruhat/chain.hpp"
#include "bruhat/coproduct.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/vertex_set.hpp"

namespace bruhat {

struct MinimalSearchOptions {
  /// Nonzero coefficients a single term may carry.
  std::vector<Coefficient> coefficients{-1, 1};
  /// One formula per dimension, relabelled onto every face of that size.
  bool uniform = false;
  std::size_t node_cap = kDefaultNodeCap;
};

namespace detail {

using TermKey = std::tuple<std::uint64_t, std::uint64_t, Coefficient>;

inline std::vector<TermKey> key_of(const TensorChain& t) {
  std::vector<TermKey> out;
  for (const auto& term : t.terms()) {
    out.emplace_back(term.left.bits(), term.right.bits(), term.coef);
  }
  return out;
}

/// All D with ∂D = target using the fewest terms, each term drawn from
/// vertices in `allowed`. Terms of D are pairwise distinct basis elements.
class BoundarySolver {
 public:
  BoundarySolver(VertexSet allowed, const MinimalSearchOptions& opts,
                 std::size_t& nodes)
      : allowed_(allowed), opts_(opts), nodes_(nodes) {}

  std::vector<TensorChain> solve(const TensorChain& target,
                                 std::size_t max_budget) {
    for (std::size_t budget = 0; budget <= max_budget; ++budget) {
      found_.clear();
      std::vector<TensorTerm> chosen;
      dfs(target, chosen, budget);
      if (!found_.empty()) {
        std::vector<TensorChain> out;
        for (const auto& [key, chain] : found_) out.push_back(chain);
        return out;
      }
    }
    return {};
  }

 private:
  void dfs(const TensorChain& residual, std::vector<TensorTerm>& chosen,
           std::size_t budget) {
    if (++nodes_ > opts_.node_cap) {
      throw ResourceLimitError("minimal coproduct search exceeds " +
                               std::to_string(opts_.node_cap) + " nodes");
    }
    if (residual.is_zero()) {
      const TensorChain d = TensorChain::from_terms(chosen);
      found_.emplace(key_of(d), d);
      return;
    }
    if (budget == 0) return;
    // A term X⊗Y has |X|+|Y| boundary terms at most.
    const std::size_t reach = 2 * static_cast<std::size_t>(allowed_.size());
    if (residual.size() > budget * reach) return;

    const TensorTerm& t = residual.terms().front();
    std::vector<std::pair<VertexSet, VertexSet>> candidates;
    for (int v : allowed_) {
      if (!t.left.contains(v)) candidates.emplace_back(t.left.with(v), t.right);
      if (!t.right.contains(v)) {
        candidates.emplace_back(t.left, t.right.with(v));
      }
    }
    for (const auto& [x, y] : candidates) {
      const bool used = std::any_of(
          chosen.begin(), chosen.end(),
          [&](const TensorTerm& c) { return c.left == x && c.right == y; });
      if (used) continue;
      const TensorChain unit = tensor_boundary(TensorChain::single(x, y));
      for (Coefficient c : opts_.coefficients) {
        chosen.push_back({x, y, c});
        dfs(residual - unit * c, chosen, budget - 1);
        chosen.pop_back();
      }
    }
  }

  VertexSet allowed_;
  const MinimalSearchOptions& opts_;
  std::size_t& nodes_;
  std::map<std::vector<TermKey>, TensorChain> found_;
};

inline std::vector<TensorTerm> relabel_terms(const TensorChain& t,
                                             VertexSet support) {
  std::vector<TensorTerm> out;
  for (const auto& term : t.terms()) {
    out.push_back(
        {expand(term.left, support), expand(term.right, support), term.coef});
  }
  return out;
}

}  // namespace detail

/// Every coproduct Δ' on Δ^n of degree i with
///   ∂Δ' - (-1)^i Δ'∂ = (1 + (-1)^i T) Δ_{i-1}^∅,
/// Δ'(p) = p⊗p when i = 0, and the minimal number of terms on every face
/// simultaneously. Faces are filled in order of size; on each face only the
/// fewest-term completions are kept, and at the end solutions whose term
/// count exceeds the per-face minimum on some face are discarded.
///
/// With `uniform`, the value on a face of size d+1 is the formula chosen for
/// [0,d] relabelled, and formulas may only use the vertices of their own
/// simplex.
inline std::vector<Coproduct> minimal_coproduct_search(
    int n, int i, const MinimalSearchOptions& opts = {}) {
  if (n < 0 || n > 4 || i < 0 || i > 3) {
    throw std::invalid_argument("minimal search is limited to n <= 4, i <= 3");
  }
  const Coproduct rhs = homotopy_target(n, i);
  const int face_count = (1 << (n + 1)) - 1;
  std::size_t nodes = 0;

  // Faces to decide: all nonempty subsets, or [0,d] for each d when uniform.
  std::vector<VertexSet> order;
  if (opts.uniform) {
    for (int d = 0; d <= n; ++d) order.push_back(VertexSet::full(d));
  } else {
    order = nonempty_subsets(VertexSet::full(n));
  }

  using Table = std::vector<TensorChain>;  // indexed by face bits
  std::vector<Table> complete;

  auto assign = [&](Table& table, VertexSet face, const TensorChain& value) {
    if (!opts.uniform) {
      table[face.bits()] = value;
      return;
    }
    // Relabel the formula on [0,d] onto every face of size d+1.
    for (VertexSet s : subsets_of_size(VertexSet::full(n), face.size())) {
      table[s.bits()] = TensorChain::from_terms(detail::relabel_terms(value, s));
    }
  };

  auto target_at = [&](const Table& table, VertexSet s) {
    TensorChain inner;
    if (s.size() >= 2) {
      int p = 0;
      for (int v : s) {
        inner += table[s.without(v).bits()] * ((p & 1) ? -1 : 1);
        ++p;
      }
    }
    return inner * ((i & 1) ? Coefficient{-1} : Coefficient{1}) + rhs(s);
  };

  auto dfs = [&](auto&& self, std::size_t idx, Table& table) -> void {
    if (idx == order.size()) {
      complete.push_back(table);
      return;
    }
    const VertexSet s = order[idx];
    std::vector<TensorChain> options;
    if (i == 0 && s.size() == 1) {
      options.push_back(TensorChain::single(s, s));
    } else {
      const TensorChain target = target_at(table, s);
      detail::BoundarySolver solver(opts.uniform ? s : VertexSet::full(n),
                                    opts, nodes);
      // Δ^U uses C(|S|, i+1) terms, so the minimum never exceeds that.
      const std::size_t bound =
          subsets_of_size(s, std::min(i + 1, s.size())).size() + 1;
      options = solver.solve(target, bound);
      if (options.empty()) {
        throw std::logic_error("no coproduct value found on face " +
                               s.to_string());
      }
    }
    for (const TensorChain& value : options) {
      Table next = table;
      assign(next, s, value);
      self(self, idx + 1, next);
    }
  };
  Table start(std::size_t{1} << (n + 1));
  dfs(dfs, 0, start);

  // Keep only solutions that are minimal on every face at once.
  std::vector<std::size_t> best(std::size_t{1} << (n + 1), SIZE_MAX);
  for (const Table& t : complete) {
    for (int bits = 1; bits <= face_count; ++bits) {
      best[bits] = std::min(best[bits], t[bits].size());
    }
  }
  std::vector<Coproduct> out;
  for (const Table& t : complete) {
    bool minimal = true;
    for (int bits = 1; bits <= face_count && minimal; ++bits) {
      minimal = t[bits].size() == best[bits];
    }
    if (!minimal) continue;
    auto shared = std::make_shared<const Table>(t);
    out.emplace_back(CoproductKind::kTabulated, n, i,
                     [shared](VertexSet s) { return (*shared)[s.bits()]; });
  }
  return out;
}

/// True iff the two coproducts agree on every face.
inline bool same_coproduct(const Coproduct& a, const Coproduct& b) {
  return compare_coproducts(a, b, "").passed;
}

}  // namespace bruhat
