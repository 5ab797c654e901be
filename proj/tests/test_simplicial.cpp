#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "bruhat/coproduct.hpp"
#include "bruhat/simplicial.hpp"

using namespace bruhat;

namespace {

using Family = std::vector<VertexSet>;

SimplicialComplex rp2() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 2, 3}, {0, 3, 4},
                                         {0, 4, 5}, {0, 1, 5}, {1, 2, 4},
                                         {2, 3, 5}, {1, 3, 4}, {2, 4, 5},
                                         {1, 3, 5}});
}

SimplicialComplex circle() {
  return SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}});
}

SimplicialComplex hollow_tetrahedron() {
  return SimplicialComplex::from_facets(
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex four_squares() {
  return SimplicialComplex::from_facets(
      {{0, 1, 3, 5}, {0, 1, 4, 5}, {0, 2, 3, 5}, {0, 2, 4, 5}});
}

Mod2Cochain random_cochain(const SimplicialComplex& s, int p,
                           std::mt19937& rng) {
  Mod2Cochain c = Mod2Cochain::zero(s, p);
  for (auto& x : c.values) x = static_cast<std::uint8_t>(rng() & 1);
  return c;
}

std::vector<std::size_t> betti(const SimplicialComplex& s) {
  std::vector<std::size_t> out;
  for (int p = 0; p <= s.dimension(); ++p) {
    out.push_back(cohomology_mod2(s, p).dimension());
  }
  return out;
}

// Reference for u ⌣ v using a coproduct given by a list of terms per simplex,
// evaluated independently of cup_with.
std::uint8_t pair_on(const SimplicialComplex& s, const Mod2Cochain& u,
                     const Mod2Cochain& v, const TensorChain& value) {
  unsigned acc = 0;
  for (const auto& t : value.terms()) {
    if (t.left.size() != u.p + 1 || t.right.size() != v.p + 1) continue;
    if (!s.contains(t.left) || !s.contains(t.right)) continue;
    const unsigned a = u.values[s.index_of(t.left)];
    const unsigned b = v.values[s.index_of(t.right)];
    acc += static_cast<unsigned>(t.coef & 1) * a * b;
  }
  return static_cast<std::uint8_t>(acc & 1);
}

}  // namespace

TEST(Complex, ClosureAndAccessors) {
  const auto t = hollow_tetrahedron();
  EXPECT_EQ(t.n(), 3);
  EXPECT_EQ(t.dimension(), 2);
  EXPECT_EQ(t.of_dimension(0).size(), 4u);
  EXPECT_EQ(t.of_dimension(1).size(), 6u);
  EXPECT_EQ(t.of_dimension(2).size(), 4u);
  EXPECT_TRUE(t.of_dimension(3).empty());
  EXPECT_EQ(t.maximal(), (Family{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  EXPECT_THROW(SimplicialComplex::from_simplices({{0, 1}}),
               std::invalid_argument);
  EXPECT_NO_THROW(SimplicialComplex::from_simplices({{0}, {1}, {0, 1}}));
  const auto r = rp2();
  EXPECT_EQ(r.of_dimension(1).size(), 15u);
  EXPECT_EQ(r.of_dimension(2).size(), 10u);
}

TEST(SigmaConsistency, NonOrderComplex) {
  const auto t = hollow_tetrahedron();
  const Family u{{0, 1, 2}, {1, 2, 3}};
  EXPECT_TRUE(is_sigma_consistent(u, t, 2));
  EXPECT_FALSE(is_sigma_consistent(u, SimplicialComplex::simplex(3), 2));
  EXPECT_FALSE(is_consistent(u, 3, 2));
  EXPECT_TRUE(is_sigma_consistent({}, t, 2));
  EXPECT_THROW(is_sigma_consistent({{0, 1, 2, 3}}, t, 2), std::invalid_argument);

  const auto set = SigmaConsistentSet::make(t, 2, u);
  EXPECT_TRUE(complex_homotopy_check(set, 1).passed);
}

TEST(SigmaConsistency, AugmentationCanDeadEnd) {
  const auto s = four_squares();
  const Family u{{0, 1, 3}, {0, 2, 4}, {1, 4, 5}, {2, 3, 5}};
  ASSERT_TRUE(is_sigma_consistent(u, s, 2));
  EXPECT_TRUE(addable_simplices(u, s, 2).empty());
  // The cycle from the example: 025 forces 035, 015, 045 and back.
  Family bigger = u;
  bigger.push_back({0, 2, 5});
  EXPECT_FALSE(is_sigma_consistent(bigger, s, 2));
  for (VertexSet k : {VertexSet{0, 3, 5}, VertexSet{0, 1, 5}, VertexSet{0, 4, 5}}) {
    bigger.push_back(k);
  }
  EXPECT_TRUE(is_sigma_consistent(bigger, s, 2));
}

TEST(SigmaConsistency, AddableReducesToCoversOnTheSimplex) {
  for (const auto& u : enumerate_bruhat(3, 1)) {
    Family expected;
    for (const auto& [k, next] : covering_relations(u)) expected.push_back(k);
    EXPECT_EQ(addable_simplices(u.members(), SimplicialComplex::simplex(3), 1),
              expected);
  }
  // No 3-vertex simplices: every edge is addable.
  const auto c = circle();
  EXPECT_EQ(addable_simplices({{0, 1}}, c, 1), (Family{{0, 2}, {1, 2}}));
}

TEST(SigmaConsistency, EnumerationOnSimplexMatchesBruhat) {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
    std::set<Family> a;
    for (const auto& u : enumerate_bruhat(n, r)) a.insert(u.members());
    const auto b = enumerate_sigma_consistent(SimplicialComplex::simplex(n), r);
    EXPECT_EQ(a, std::set<Family>(b.begin(), b.end())) << n << "," << r;
  }
}

TEST(SigmaConsistency, EnumerationMatchesBruteForce) {
  const auto s = four_squares();
  const Family& universe = s.of_dimension(2);
  ASSERT_LE(universe.size(), 20u);
  std::set<Family> brute;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << universe.size()); ++sel) {
    Family u;
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if ((sel >> j) & 1) u.push_back(universe[j]);
    }
    if (is_sigma_consistent(u, s, 2)) brute.insert(u);
  }
  const auto got = enumerate_sigma_consistent(s, 2);
  EXPECT_EQ(std::set<Family>(got.begin(), got.end()), brute);
  EXPECT_EQ(got.size(), brute.size());
}

TEST(SigmaConsistency, RestrictionsAreSigmaConsistent) {
  const auto s = four_squares();
  std::set<Family> all;
  for (const auto& u : enumerate_sigma_consistent(s, 2)) all.insert(u);
  std::size_t restricted = 0;
  std::set<Family> seen;
  for (const auto& g : enumerate_bruhat(5, 2)) {
    const auto r = SigmaConsistentSet::restriction(s, g);
    if (seen.insert(r.members()).second) ++restricted;
    ASSERT_TRUE(all.count(r.members()));
  }
  EXPECT_LT(restricted, all.size());
}

TEST(ComplexCoproduct, AgreesWithSimplexCoproduct) {
  const auto tri = SimplicialComplex::simplex(2);
  const auto g = ConsistentSet::make(2, 2, {{0, 1, 2}});
  const auto d = delta_complex(SigmaConsistentSet::make(tri, 2, g.members()), 1);
  const Coproduct ref = delta_from_U(g, 1);
  for (VertexSet s : tri.simplices()) EXPECT_EQ(d(s), ref(s)) << s.to_string();
  EXPECT_THROW(d(VertexSet{0, 3}), std::invalid_argument);
}

TEST(ComplexCoproduct, HollowTriangle) {
  const auto c = circle();
  const auto set = SigmaConsistentSet::make(c, 2, {});
  const auto d = delta_complex(set, 1);
  EXPECT_EQ(d(VertexSet{0, 1}), TensorChain::single({0, 1}, {0, 1}, -1));
  EXPECT_TRUE(d(VertexSet{2}).is_zero());
  EXPECT_TRUE(complex_homotopy_check(set, 1).passed);
}

TEST(ComplexCoproduct, HomotopyOnEverySigmaConsistentSet) {
  for (const auto& s : {hollow_tetrahedron(), four_squares(), rp2()}) {
    for (int i = 0; i <= 1; ++i) {
      const auto sets = enumerate_sigma_consistent(s, i + 1);
      ASSERT_FALSE(sets.empty());
      for (const auto& u : sets) {
        const auto report =
            complex_homotopy_check(SigmaConsistentSet::make(s, i + 1, u), i);
        ASSERT_TRUE(report.passed) << report.first_failure;
      }
    }
  }
}

// (U_σ)/(σ∖τ) = U_τ, compared in the local labels of τ.
TEST(ComplexCoproduct, RestrictionCoherence) {
  const auto s = four_squares();
  auto local = [](const Family& u, VertexSet face) {
    const VertexSet outside = VertexSet::full(kMaxVertex) - face;
    Family out;
    for (VertexSet k : u) out.push_back(compress(k, outside));
    return ConsistentSet::make(face.size() - 1, 2, out);
  };
  for (const auto& u : enumerate_sigma_consistent(s, 2)) {
    const auto set = SigmaConsistentSet::make(s, 2, u);
    for (VertexSet sigma : s.maximal()) {
      const ConsistentSet big = local(set.restricted_to(sigma), sigma);
      for (VertexSet tau : nonempty_subsets(sigma)) {
        const VertexSet removed = compress(sigma - tau, VertexSet::full(kMaxVertex) - sigma);
        ASSERT_EQ(contraction(big, removed), local(set.restricted_to(tau), tau))
            << sigma.to_string() << " " << tau.to_string();
      }
    }
  }
}

TEST(Cochains, CoboundaryExamples) {
  const auto tri = SimplicialComplex::simplex(2);
  const auto v0 = Mod2Cochain::indicator(tri, {{0}});
  EXPECT_EQ(coboundary(tri, v0).support(tri), (Family{{0, 1}, {0, 2}}));
  const auto c = circle();
  for (int v = 0; v <= 2; ++v) {
    EXPECT_EQ(coboundary(c, Mod2Cochain::indicator(c, {{v}})).support(c).size(),
              2u);
  }
  EXPECT_THROW(Mod2Cochain::indicator(c, {{0}, {0, 1}}), std::invalid_argument);
}

TEST(Cochains, CoboundarySquaresToZero) {
  std::mt19937 rng(3);
  for (const auto& s : {rp2(), four_squares(), SimplicialComplex::simplex(4)}) {
    for (int p = 0; p + 2 <= s.dimension(); ++p) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto u = random_cochain(s, p, rng);
        ASSERT_TRUE(coboundary(s, coboundary(s, u)).is_zero());
      }
    }
  }
}

TEST(Cup, Examples) {
  const auto tri = SimplicialComplex::simplex(2);
  const auto empty = SigmaConsistentSet::make(tri, 1, {});
  const auto u = Mod2Cochain::indicator(tri, {{0, 1}});
  const auto v = Mod2Cochain::indicator(tri, {{1, 2}});
  const auto w = cup_i(u, v, empty, 0);
  EXPECT_EQ(w.p, 2);
  EXPECT_EQ(w.at(tri, {0, 1, 2}), 1);
  EXPECT_EQ(cup_i(v, u, empty, 0).at(tri, {0, 1, 2}), 0);
  // Degree underflow.
  const auto x = Mod2Cochain::indicator(tri, {{0}});
  EXPECT_TRUE(cup_i(x, x, SigmaConsistentSet::make(tri, 2, {}), 1).is_zero());
}

TEST(Cup, TopCupIsIdentity) {
  std::mt19937 rng(5);
  const auto s = rp2();
  for (int p = 0; p <= 2; ++p) {
    for (const auto& g : enumerate_bruhat(5, p + 1)) {
      const auto set = SigmaConsistentSet::restriction(s, g);
      const auto u = random_cochain(s, p, rng);
      ASSERT_EQ(cup_i(u, u, set, p), u);
      if (p == 2) break;
    }
  }
}

TEST(Cup, MatchesDirectPairingAndIsBilinear) {
  std::mt19937 rng(9);
  const auto s = rp2();
  const auto sets = enumerate_sigma_consistent(s, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto set = SigmaConsistentSet::make(s, 1, sets[rng() % sets.size()]);
    const auto d = delta_complex(set, 0);
    const auto u = random_cochain(s, 1, rng);
    const auto v = random_cochain(s, 1, rng);
    const auto v2 = random_cochain(s, 1, rng);
    const auto w = cup_i(u, v, set, 0);
    for (VertexSet t : s.of_dimension(2)) {
      ASSERT_EQ(w.at(s, t), pair_on(s, u, v, d(t)));
    }
    ASSERT_EQ(cup_i(u, v + v2, set, 0), w + cup_i(u, v2, set, 0));
    ASSERT_EQ(cup_i(u + v2, v, set, 0), w + cup_i(v2, v, set, 0));
  }
}

// δ(u ⌣_i v) = δu ⌣_i v + u ⌣_i δv + u ⌣_{i-1} v + v ⌣_{i-1} u mod 2.
TEST(Cup, CoboundaryFormula) {
  std::mt19937 rng(13);
  for (const auto& s : {rp2(), four_squares()}) {
    for (int i = 0; i <= 1; ++i) {
      const auto sets = enumerate_sigma_consistent(s, i + 1);
      const auto lower = delta_complex_empty(i - 1);
      for (int trial = 0; trial < 30; ++trial) {
        const auto set =
            SigmaConsistentSet::make(s, i + 1, sets[rng() % sets.size()]);
        const int p = 1 + static_cast<int>(rng() % 2);
        const int q = i + static_cast<int>(rng() % 2);
        if (p + q - i + 1 > s.dimension()) continue;
        const auto u = random_cochain(s, p, rng);
        const auto v = random_cochain(s, q, rng);
        const auto lhs = coboundary(s, cup_i(u, v, set, i));
        auto rhs = cup_i(coboundary(s, u), v, set, i) +
                   cup_i(u, coboundary(s, v), set, i);
        if (i >= 1) {
          rhs = rhs + cup_with(s, u, v, i - 1, lower) +
                cup_with(s, v, u, i - 1, lower);
        }
        ASSERT_EQ(lhs, rhs) << "i=" << i << " p=" << p << " q=" << q;
      }
    }
  }
}

TEST(Cohomology, Dimensions) {
  EXPECT_EQ(betti(SimplicialComplex::simplex(2)),
            (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(betti(circle()), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(betti(rp2()), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(betti(hollow_tetrahedron()), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Cohomology, RepresentativesAreIndependentCocycles) {
  const auto s = rp2();
  const auto h = cohomology_mod2(s, 1);
  ASSERT_EQ(h.dimension(), 1u);
  EXPECT_TRUE(coboundary(s, h.representatives[0]).is_zero());
  EXPECT_EQ(class_coordinates(s, h, h.representatives[0]),
            (std::vector<std::uint8_t>{1}));
  const auto b = coboundary(s, Mod2Cochain::indicator(s, {{3}}));
  EXPECT_EQ(class_coordinates(s, h, b), (std::vector<std::uint8_t>{0}));
  EXPECT_EQ(class_coordinates(s, h, h.representatives[0] + b),
            (std::vector<std::uint8_t>{1}));
  EXPECT_THROW(class_coordinates(s, h, Mod2Cochain::indicator(s, {{0, 1}})),
               std::invalid_argument);
}

TEST(Squares, ProjectivePlaneSqOneIsNonzeroAndClassical) {
  const auto s = rp2();
  const Mod2Matrix classical =
      square_matrix(s, 0, 1, delta_complex_classical(s, 0));
  EXPECT_EQ(classical, (Mod2Matrix{{1}}));
  const auto set = SigmaConsistentSet::restriction(s, ConsistentSet::empty(5, 1));
  EXPECT_EQ(steenrod_square_matrix(set, 0, 1), classical);
}

TEST(Squares, CircleAndSimplex) {
  const auto c = circle();
  const auto set = SigmaConsistentSet::make(c, 1, {});
  EXPECT_EQ(steenrod_square_matrix(set, 0, 1), (Mod2Matrix{{}}));
  const auto tri = SimplicialComplex::simplex(2);
  EXPECT_TRUE(steenrod_square_matrix(SigmaConsistentSet::make(tri, 1, {}), 0, 1)
                  .empty());
}

TEST(Squares, RepresentativeIndependence) {
  const auto s = rp2();
  const auto h = cohomology_mod2(s, 1);
  for (const auto& g : enumerate_bruhat(5, 1)) {
    const auto set = SigmaConsistentSet::restriction(s, g);
    const auto base = steenrod_square(set, 0, h.representatives[0]);
    for (VertexSet v : s.of_dimension(0)) {
      const auto shifted =
          h.representatives[0] + coboundary(s, Mod2Cochain::indicator(s, {v}));
      ASSERT_EQ(steenrod_square(set, 0, shifted), base);
    }
  }
  EXPECT_THROW(
      steenrod_square(SigmaConsistentSet::restriction(s, ConsistentSet::empty(5, 1)),
                      0, Mod2Cochain::indicator(s, {{0, 1}})),
      std::invalid_argument);
}

TEST(Squares, InvarianceAcrossRestrictions) {
  const auto r = sq_invariance_check(rp2(), 0, 1);
  EXPECT_TRUE(r.check.passed) << r.check.first_failure;
  EXPECT_EQ(r.global_elements, 720u);
  EXPECT_GT(r.distinct_restrictions, 1u);
  EXPECT_EQ(r.matrix, (Mod2Matrix{{1}}));
}

TEST(Squares, TopSquareIsIdentity) {
  const auto c = sq_invariance_check(circle(), 1, 1);
  EXPECT_TRUE(c.check.passed);
  EXPECT_EQ(c.matrix, (Mod2Matrix{{1}}));
  const auto p1 = sq_invariance_check(rp2(), 1, 1);
  EXPECT_TRUE(p1.check.passed) << p1.check.first_failure;
  EXPECT_EQ(p1.matrix, (Mod2Matrix{{1}}));
  const auto p2 = sq_invariance_check(rp2(), 2, 2);
  EXPECT_TRUE(p2.check.passed) << p2.check.first_failure;
  EXPECT_EQ(p2.matrix, (Mod2Matrix{{1}}));
}
