#pragma once

// JSON forms of the library's values.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bruhat/bruhat.hpp"
#include "bruhat/chain.hpp"
#include "bruhat/simplicial.hpp"
#include "bruhat/vertex_set.hpp"
#include "bruhat/zonotope.hpp"

namespace bruhat::io {

using nlohmann::json;

inline json to_json(VertexSet s) {
  json out = json::array();
  for (int v : s) out.push_back(v);
  return out;
}

inline VertexSet vertex_set_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vertex set must be an array");
  VertexSet s;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("vertex labels must be integers");
    }
    const int x = v.get<int>();
    if (x < 0 || x > kMaxVertex) {
      throw std::invalid_argument("vertex label out of range: " +
                                  std::to_string(x));
    }
    if (s.contains(x)) {
      throw std::invalid_argument("repeated vertex " + std::to_string(x));
    }
    s = s.with(x);
  }
  return s;
}

inline std::vector<VertexSet> family_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of sets");
  std::vector<VertexSet> out;
  for (const auto& s : j) out.push_back(vertex_set_from_json(s));
  return out;
}

inline json to_json(const std::vector<VertexSet>& family) {
  json out = json::array();
  for (VertexSet s : family) out.push_back(to_json(s));
  return out;
}

inline json to_json(const ConsistentSet& u) {
  return {{"n", u.n()}, {"r", u.level()}, {"inversions", to_json(u.members())}};
}

inline ConsistentSet consistent_set_from_json(const json& j) {
  return ConsistentSet::make(j.at("n").get<int>(), j.at("r").get<int>(),
                             family_from_json(j.at("inversions")));
}

inline json to_json(const MaximalChain& c) {
  return {{"n", c.n}, {"r", c.r}, {"order", to_json(c.order)}};
}

inline MaximalChain maximal_chain_from_json(const json& j) {
  MaximalChain c{j.at("n").get<int>(), j.at("r").get<int>(),
                 family_from_json(j.at("order"))};
  validate_chain(c);
  return c;
}

inline json to_json(const Cubillage& q) {
  json cubes = json::array();
  for (const auto& [l, a] : q.cubes) {
    cubes.push_back({{"L", to_json(l)}, {"A", to_json(a)}});
  }
  return {{"n", q.n}, {"r", q.r}, {"cubes", cubes}};
}

inline json to_json(const TensorChain& t) {
  json terms = json::array();
  for (const auto& term : t.terms()) {
    terms.push_back({{"coef", term.coef},
                     {"left", to_json(term.left)},
                     {"right", to_json(term.right)}});
  }
  return {{"terms", terms}};
}

inline TensorChain tensor_chain_from_json(const json& j) {
  std::vector<TensorTerm> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({vertex_set_from_json(t.at("left")),
                     vertex_set_from_json(t.at("right")),
                     t.at("coef").get<Coefficient>()});
  }
  return TensorChain::from_terms(std::move(terms));
}

/// {"vertices": 6, "facets": [[0,1,3], ...]}; the facet list is closed
/// downward on load.
inline SimplicialComplex complex_from_json(const json& j) {
  const auto facets = family_from_json(j.at("facets"));
  if (j.contains("vertices")) {
    const int count = j.at("vertices").get<int>();
    for (VertexSet f : facets) {
      if (!f.empty() && f.max() >= count) {
        throw std::invalid_argument("facet " + f.to_string() +
                                    " uses a vertex beyond the declared " +
                                    std::to_string(count));
      }
    }
  }
  return SimplicialComplex::from_facets(facets);
}

inline json to_json(const SimplicialComplex& c) {
  return {{"vertices", c.n() + 1}, {"facets", to_json(c.maximal())}};
}

inline json to_json(const SimplicialComplex& sigma, const Mod2Cochain& u) {
  return {{"p", u.p}, {"support", to_json(u.support(sigma))}};
}

inline Mod2Cochain cochain_from_json(const SimplicialComplex& sigma,
                                     const json& j) {
  const int p = j.at("p").get<int>();
  Mod2Cochain c = Mod2Cochain::zero(sigma, p);
  for (VertexSet s : family_from_json(j.at("support"))) {
    if (s.size() != p + 1) throw std::invalid_argument("support degree");
    c.values[sigma.index_of(s)] ^= 1;
  }
  return c;
}

}  // namespace bruhat::io
