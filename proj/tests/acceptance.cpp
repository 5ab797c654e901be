// One PASS/FAIL line per acceptance criterion, with the case count and the
// wall time. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bruhat/suites.hpp"

using namespace bruhat;

namespace {

TensorChain tc(std::vector<TensorTerm> terms) {
  return TensorChain::from_terms(std::move(terms));
}

void expect(CheckReport& r, const TensorChain& got, const TensorChain& want,
            const std::string& what) {
  ++r.cases;
  if (!(got == want)) {
    r.fail(what + ": got " + got.to_string() + ", expected " + want.to_string());
  }
}

// The displayed low-dimensional values of Steenrod's coproducts, the two
// cup-1 coproducts of the triangle, and the two reoriented coproducts.
CheckReport worked_examples() {
  CheckReport r{"worked examples"};
  const VertexSet v0{0}, v01{0, 1}, v012{0, 1, 2};
  auto d = [](int n, int i) { return delta_classical(n, i); };
  auto td = [](int n, int i) { return transposed(delta_classical(n, i)); };

  expect(r, d(0, 0)(v0), TensorChain::single(v0, v0), "Δ_0(0)");
  expect(r, td(0, 0)(v0), TensorChain::single(v0, v0), "TΔ_0(0)");
  expect(r, d(1, 0)(v01), tc({{v0, v01, 1}, {v01, {1}, 1}}), "Δ_0(01)");
  expect(r, td(1, 0)(v01), tc({{v01, v0, 1}, {{1}, v01, 1}}), "TΔ_0(01)");
  expect(r, d(1, 1)(v01), TensorChain::single(v01, v01, -1), "Δ_1(01)");
  expect(r, td(1, 1)(v01) * Coefficient{-1}, TensorChain::single(v01, v01, -1),
         "-TΔ_1(01)");
  expect(r, d(2, 0)(v012),
         tc({{v0, v012, 1}, {v01, {1, 2}, 1}, {v012, {2}, 1}}), "Δ_0(012)");
  expect(r, td(2, 0)(v012),
         tc({{v012, v0, 1}, {{1, 2}, v01, -1}, {{2}, v012, 1}}), "TΔ_0(012)");
  expect(r, d(2, 1)(v012),
         tc({{v012, v01, 1}, {{0, 2}, v012, -1}, {v012, {1, 2}, 1}}),
         "Δ_1(012)");
  expect(r, td(2, 1)(v012),
         tc({{v01, v012, 1}, {v012, {0, 2}, -1}, {{1, 2}, v012, 1}}),
         "TΔ_1(012)");
  expect(r, d(2, 2)(v012), TensorChain::single(v012, v012), "Δ_2(012)");
  expect(r, td(2, 2)(v012), TensorChain::single(v012, v012), "TΔ_2(012)");

  // The cubillage coproducts on the triangle.
  expect(r, delta_from_U(ConsistentSet::top(2, 2), 1)(v012),
         tc({{v012, v01, 1}, {{0, 2}, v012, -1}, {v012, {1, 2}, 1}}),
         "Δ_1^{012}(012)");
  expect(r, delta_empty(2, 1)(v012),
         tc({{v01, v012, -1}, {v012, {0, 2}, 1}, {{1, 2}, v012, -1}}),
         "Δ_1^∅(012)");
  expect(r, delta_empty(2, 0)(v012),
         tc({{v0, v012, 1}, {v01, {1, 2}, 1}, {v012, {2}, 1}}), "Δ_0^∅(012)");

  // Reoriented at U = {01}.
  const auto u = ConsistentSet::make(2, 1, {v01});
  expect(r, delta_from_U(u, 0)(v012),
         tc({{{1}, v012, 1}, {v01, {0, 2}, 1}, {v012, {2}, 1}}), "Δ_0^U(012)");
  const auto w1 = reoriented_chain_from_order(u, {v01, {1, 2}, {0, 2}});
  const auto w2 = reoriented_chain_from_order(u, {{0, 2}, {1, 2}, v01});
  expect(r, delta_from_reoriented_chain(w1, 0)(v012),
         tc({{v01, v012, 1}, {v012, {1, 2}, 1}, {{0, 2}, v012, -1}}), "Δ^W1");
  expect(r, delta_from_reoriented_chain(w2, 0)(v012),
         tc({{v012, {0, 2}, 1}, {{1, 2}, v012, -1}, {v012, v01, -1}}), "Δ^W2");
  return r;
}

// Subset filter over all families of (r+1)-subsets: each packet is sorted
// as a list of element vectors and the membership pattern along it must be
// 1..10..0 or 0..01..1.
std::size_t oracle_count(int n, int r) {
  std::vector<std::vector<int>> universe;
  std::vector<int> pick(r + 1);
  std::function<void(int, int)> gen = [&](int start, int depth) {
    if (depth == r + 1) {
      universe.push_back(pick);
      return;
    }
    for (int v = start; v <= n; ++v) {
      pick[depth] = v;
      gen(v + 1, depth + 1);
    }
  };
  gen(0, 0);
  std::vector<std::vector<int>> packets_of;  // (r+2)-sets
  std::vector<int> big(r + 2);
  std::function<void(int, int)> gen2 = [&](int start, int depth) {
    if (depth == r + 2) {
      packets_of.push_back(big);
      return;
    }
    for (int v = start; v <= n; ++v) {
      big[depth] = v;
      gen2(v + 1, depth + 1);
    }
  };
  gen2(0, 0);
  std::size_t count = 0;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << universe.size());
       ++sel) {
    std::set<std::vector<int>> chosen;
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if ((sel >> j) & 1) chosen.insert(universe[j]);
    }
    bool ok = true;
    for (const auto& m : packets_of) {
      std::vector<std::vector<int>> pack;
      for (std::size_t drop = 0; drop < m.size(); ++drop) {
        std::vector<int> e;
        for (std::size_t q = 0; q < m.size(); ++q) {
          if (q != drop) e.push_back(m[q]);
        }
        pack.push_back(e);
      }
      std::sort(pack.begin(), pack.end());
      std::vector<int> ind;
      for (const auto& e : pack) ind.push_back(chosen.count(e) ? 1 : 0);
      if (!std::is_sorted(ind.begin(), ind.end()) &&
          !std::is_sorted(ind.rbegin(), ind.rend())) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

CheckReport enumeration_counts() {
  CheckReport r{"enumeration counts"};
  for (auto [n, rr, want] : {std::tuple{2, 1, std::size_t{6}},
                             std::tuple{3, 2, std::size_t{8}}}) {
    r.cases += 2;
    const std::size_t got = enumerate_bruhat(n, rr).size();
    const std::size_t oracle = oracle_count(n, rr);
    if (got != want || oracle != want) {
      r.fail("|B([0," + std::to_string(n) + "]," + std::to_string(rr) +
             ")|: enumerator " + std::to_string(got) + ", oracle " +
             std::to_string(oracle) + ", expected " + std::to_string(want));
    }
  }
  return r;
}

CheckReport fundamental_theorem() {
  CheckReport r{"chain classes"};
  for (auto [n, rr] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2},
                       std::pair{4, 2}}) {
    ++r.cases;
    const std::size_t classes = count_chain_classes(n, rr);
    const std::size_t next = enumerate_bruhat(n, rr + 1).size();
    if (classes != next) {
      r.fail("(" + std::to_string(n) + "," + std::to_string(rr) + "): " +
             std::to_string(classes) + " classes vs " + std::to_string(next));
    }
  }
  r.merge(suites::chains(4));
  return r;
}

CheckReport reoriented_theorem() {
  CheckReport r = suites::reoriented(3);
  // The explicit pair at U = {01} also satisfies the identity.
  const auto u = ConsistentSet::make(2, 1, {{0, 1}});
  r.merge(reoriented_homotopy_check(
      reoriented_chain_from_order(u, {{0, 1}, {1, 2}, {0, 2}}), 0));
  r.merge(reoriented_homotopy_check(
      reoriented_chain_from_order(u, {{0, 2}, {1, 2}, {0, 1}}), 0));
  CheckReport values = worked_examples();
  r.merge(values);
  return r;
}

struct Criterion {
  int id;
  std::string name;
  std::function<CheckReport()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked-example values", worked_examples},
      {2, "homotopy formula, n<=6, i<=3", [] { return suites::homotopy(6, 3); }},
      {3, "Steenrod comparison, n<=7, i<=4",
       [] { return suites::steenrod(7, 4); }},
      {4, "complement identity, n<=6, i<=3",
       [] { return suites::complement(6, 3); }},
      {5, "facet decomposition, supports of size <=7",
       [] { return suites::key_decomposition(6); }},
      {6, "sign lemmas, supports within [0,8]",
       [] { return suites::appendix(8); }},
      {7, "chain classes and round trips", fundamental_theorem},
      {8, "enumeration counts vs subset filter", enumeration_counts},
      {9, "cover homotopies and telescoping, n<=4, i<=2",
       [] { return suites::covers(4, 2); }},
      {10, "reoriented homotopies", reoriented_theorem},
      {11, "minimal coproduct search", suites::minimal},
      {12, "Σ-consistency examples", suites::sigma_examples},
      {13, "Steenrod squares", suites::squares},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport r{c.name};
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("%s [%2d] %s (%zu cases, %.2f s)%s%s\n",
                r.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), r.cases, secs,
                r.passed ? "" : ": ", r.first_failure.c_str());
    std::fflush(stdout);
    failures += !r.passed;
  }
  return failures == 0 ? 0 : 1;
}
