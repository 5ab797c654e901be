#pragma once

// Exhaustive verification sweeps shared by the CLI and the acceptance runner.
// Each returns a CheckReport whose first_failure names a counterexample.

#include <string>
#include <vector>

#include "bruhat/appendix.hpp"
#include "bruhat/bruhat.hpp"
#include "bruhat/coproduct.hpp"
#include "bruhat/minimal_search.hpp"
#include "bruhat/simplicial.hpp"
#include "bruhat/zonotope.hpp"

namespace bruhat::suites {

inline std::string at(int n, int i) {
  return "(n=" + std::to_string(n) + ", i=" + std::to_string(i) + ")";
}

/// Homotopy formula for every U ∈ B([0,n], i+1), n <= n_max, i <= i_max.
inline CheckReport homotopy(int n_max, int i_max) {
  CheckReport report{"homotopy"};
  for (int n = 0; n <= n_max; ++n) {
    for (int i = 0; i <= std::min(i_max, n); ++i) {
      const Coproduct target = homotopy_target(n, i);
      for (const ConsistentSet& u : enumerate_bruhat(n, i + 1)) {
        report.merge(homotopy_check(u, i, target));
        if (!report.passed) return report;
      }
    }
  }
  return report;
}

/// Δ^{complement U} = (-1)^i TΔ^U at the homotopy scale.
inline CheckReport complement(int n_max, int i_max) {
  CheckReport report{"complement"};
  for (int n = 0; n <= n_max; ++n) {
    for (int i = 0; i <= std::min(i_max, n); ++i) {
      for (const ConsistentSet& u : enumerate_bruhat(n, i + 1)) {
        report.merge(complement_check(u, i));
        if (!report.passed) return report;
      }
    }
  }
  return report;
}

inline CheckReport steenrod(int n_max, int i_max) {
  CheckReport report{"steenrod"};
  for (int i = 0; i <= i_max; ++i) {
    for (int n = i; n <= n_max; ++n) report.merge(steenrod_comparison(i, n));
  }
  return report;
}

/// ∂ of a signed cube term equals lower + upper + contraction groups, for
/// every face (L, A) with |L| >= 1 on every support S ⊆ [0,n_max], |S| >= 2.
inline CheckReport key_decomposition(int n_max) {
  CheckReport report{"key decomposition"};
  for (VertexSet s : nonempty_subsets(VertexSet::full(n_max))) {
    if (s.size() < 2) continue;
    const std::vector<int> v = s.elements();
    int total = 1;
    for (std::size_t p = 0; p < v.size(); ++p) total *= 3;
    for (int code = 0; code < total; ++code) {
      VertexSet l, a;
      int c = code;
      for (int x : v) {
        if (c % 3 == 0) l = l.with(x);
        if (c % 3 == 1) a = a.with(x);
        c /= 3;
      }
      if (l.empty()) continue;
      const ZFace f{l, a, s};
      ++report.cases;
      const TensorChain lhs = term_boundary(f).total();
      const TensorChain rhs = tensor_boundary(signed_term(f));
      if (!(lhs == rhs)) {
        report.fail("face L=" + l.to_string() + " A=" + a.to_string() +
                    " S=" + s.to_string() + ": " + lhs.to_string() + " vs " +
                    rhs.to_string());
        return report;
      }
    }
  }
  return report;
}

inline CheckReport appendix(int n_max) { return appendix_sign_suite(n_max); }

/// Chain classes of B([0,n], r) against |B([0,n], r+1)| and the
/// realize / class round trip, for 1 <= r <= n <= n_max.
inline CheckReport chains(int n_max) {
  CheckReport report{"chains"};
  for (int n = 1; n <= n_max; ++n) {
    for (int r = 1; r <= n; ++r) {
      const auto next = enumerate_bruhat(n, r + 1);
      ++report.cases;
      const std::size_t classes = count_chain_classes(n, r);
      if (classes != next.size()) {
        report.fail("B([0," + std::to_string(n) + "]," + std::to_string(r) +
                    ") has " + std::to_string(classes) +
                    " chain classes but the next level has " +
                    std::to_string(next.size()) + " elements");
        return report;
      }
      for (const ConsistentSet& w : next) {
        ++report.cases;
        const MaximalChain c = realize_chain(w);
        validate_chain(c);
        if (!(chain_class_to_element(c) == w)) {
          report.fail("round trip fails for " + w.to_string());
          return report;
        }
      }
    }
  }
  return report;
}

/// Cover homotopies in B([0,n], i) and the telescoped sum along every
/// maximal chain, for 1 <= i <= i_max, n <= n_max.
inline CheckReport covers(int n_max, int i_max) {
  CheckReport report{"covers"};
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 1; i <= std::min(i_max, n); ++i) {
      for (const ConsistentSet& u : enumerate_bruhat(n, i)) {
        for (const auto& [k, v] : covering_relations(u)) {
          report.merge(covering_homotopy_check(u, v));
          if (!report.passed) return report;
        }
      }
      // Face values of every flip, keyed by (U, K), so each chain is a sum
      // of table lookups.
      const Coproduct target = homotopy_target(n, i);
      const std::size_t faces = std::size_t{1} << (n + 1);
      for_each_maximal_chain(n, i, [&](const MaximalChain& c) {
        if (!report.passed) return;
        std::vector<std::vector<TensorTerm>> sum(faces);
        ConsistentSet u = ConsistentSet::empty(n, i);
        for (VertexSet k : c.order) {
          const Coproduct d = delta_from_face(flip_face(u, k), i);
          for (VertexSet s : nonempty_subsets(VertexSet::full(n))) {
            for (const auto& t : d(s).terms()) sum[s.bits()].push_back(t);
          }
          u = u.toggled(k);
        }
        auto table = std::make_shared<std::vector<TensorChain>>(faces);
        for (std::size_t b = 1; b < faces; ++b) {
          (*table)[b] = TensorChain::from_terms(std::move(sum[b]));
        }
        const Coproduct total{CoproductKind::kTabulated, n, i,
                              [table](VertexSet s) { return (*table)[s.bits()]; }};
        report.merge(check_homotopy_identity(total, target,
                                             "telescoped chain " + at(n, i)));
        const ConsistentSet w = chain_class_to_element(c);
        report.merge(compare_coproducts(total, delta_from_U(w, i),
                                        "telescoped sum vs class " +
                                            w.to_string()));
      });
      if (!report.passed) return report;
    }
  }
  return report;
}

/// A chain from U to its complement exists for every U ∈ B([0,n], 1), and
/// its coproduct satisfies the reoriented homotopy formula.
inline CheckReport reoriented(int n_max) {
  CheckReport report{"reoriented"};
  for (int n = 1; n <= n_max; ++n) {
    for (const ConsistentSet& u : enumerate_bruhat(n, 1)) {
      ++report.cases;
      const auto w = reoriented_maximal_chain(u);
      if (!w) {
        report.fail("no reoriented chain from " + u.to_string());
        return report;
      }
      report.merge(reoriented_homotopy_check(*w, 0));
      if (!report.passed) return report;
    }
  }
  return report;
}

namespace detail {
inline bool matches_bruhat(const std::vector<Coproduct>& found, int n, int i,
                           std::string& why) {
  const auto els = enumerate_bruhat(n, i + 1);
  if (found.size() != els.size()) {
    why = "found " + std::to_string(found.size()) + " coproducts, expected " +
          std::to_string(els.size()) + " " + at(n, i);
    return false;
  }
  for (const ConsistentSet& u : els) {
    const Coproduct d = delta_from_U(u, i);
    int hits = 0;
    for (const Coproduct& c : found) hits += same_coproduct(c, d);
    if (hits != 1) {
      why = "Δ^U for U=" + u.to_string() + " found " + std::to_string(hits) +
            " times " + at(n, i);
      return false;
    }
  }
  return true;
}
}  // namespace detail

/// Minimal-term searches: (2,1) and (2,0) give exactly the Δ^U; the uniform
/// search at (3,1) gives exactly Δ^∅ and Δ^full.
inline CheckReport minimal() {
  CheckReport report{"minimal"};
  std::string why;
  for (auto [n, i] : {std::pair{2, 1}, std::pair{2, 0}}) {
    ++report.cases;
    if (!detail::matches_bruhat(minimal_coproduct_search(n, i), n, i, why)) {
      report.fail(why);
      return report;
    }
  }
  MinimalSearchOptions opt;
  opt.uniform = true;
  const auto uniform = minimal_coproduct_search(3, 1, opt);
  ++report.cases;
  const Coproduct bottom = delta_empty(3, 1);
  const Coproduct top = delta_from_U(ConsistentSet::top(3, 2), 1);
  auto count = [&](const Coproduct& d) {
    int hits = 0;
    for (const Coproduct& c : uniform) hits += same_coproduct(c, d);
    return hits;
  };
  if (uniform.size() != 2 || count(bottom) != 1 || count(top) != 1) {
    report.fail("uniform search at (3,1) found " +
                std::to_string(uniform.size()) +
                " families, expected exactly Δ^∅ and Δ^full");
  }
  return report;
}

inline SimplicialComplex projective_plane() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4},
                                         {0, 4, 5}, {0, 1, 5}, {1, 2, 4},
                                         {2, 3, 5}, {1, 3, 4}, {2, 4, 5},
                                         {1, 3, 5}});
}

inline SimplicialComplex circle() {
  return SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}});
}

/// The Σ-consistency examples: a Σ-consistent set with no global extension,
/// and one that admits no single addition.
inline CheckReport sigma_examples() {
  CheckReport report{"sigma"};
  const auto hollow = SimplicialComplex::from_facets(
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  const std::vector<VertexSet> u{{0, 1, 2}, {1, 2, 3}};
  report.cases += 3;
  if (!is_sigma_consistent(u, hollow, 2)) report.fail("{012,123} rejected on Σ");
  if (is_consistent(u, 3, 2)) report.fail("{012,123} accepted on [0,3]");
  const auto h = complex_homotopy_check(SigmaConsistentSet::make(hollow, 2, u), 1);
  report.merge(h);

  const auto squares = SimplicialComplex::from_facets(
      {{0, 1, 3, 5}, {0, 1, 4, 5}, {0, 2, 3, 5}, {0, 2, 4, 5}});
  const std::vector<VertexSet> w{{0, 1, 3}, {0, 2, 4}, {1, 4, 5}, {2, 3, 5}};
  report.cases += 2;
  if (!is_sigma_consistent(w, squares, 2)) {
    report.fail("{013,024,145,235} rejected");
  } else if (!addable_simplices(w, squares, 2).empty()) {
    report.fail("{013,024,145,235} has an addable simplex");
  }
  return report;
}

/// Sq on the projective plane and the circle: the classical Sq^1, invariance
/// over restrictions with additivity, and Sq_p = id.
inline CheckReport squares() {
  CheckReport report{"squares"};
  const SimplicialComplex rp2 = projective_plane();
  const Mod2Matrix classical =
      square_matrix(rp2, 0, 1, delta_complex_classical(rp2, 0));
  ++report.cases;
  if (classical != Mod2Matrix{{1}}) report.fail("classical Sq^1 on RP² is zero");

  const auto sq1 = sq_invariance_check(rp2, 0, 1);
  report.merge(sq1.check);
  if (sq1.matrix != classical) {
    report.fail("Sq_0^U on H^1(RP²) differs from the classical square");
  }
  struct Top {
    SimplicialComplex sigma;
    int p;
    std::string label;
  };
  for (const Top& t : {Top{circle(), 1, "S¹"}, Top{rp2, 1, "RP²"},
                       Top{rp2, 2, "RP²"}}) {
    const auto r = sq_invariance_check(t.sigma, t.p, t.p);
    report.merge(r.check);
    const std::size_t dim = cohomology_mod2(t.sigma, t.p).dimension();
    Mod2Matrix id(dim, std::vector<std::uint8_t>(dim, 0));
    for (std::size_t j = 0; j < dim; ++j) id[j][j] = 1;
    if (r.matrix != id) {
      report.fail("Sq_" + std::to_string(t.p) + " is not the identity on H^" +
                  std::to_string(t.p) + "(" + t.label + ")");
    }
  }
  return report;
}

}  // namespace bruhat::suites
