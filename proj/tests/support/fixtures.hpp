#pragma once

#include <string>
#include <utility>
#include <vector>

#include "knop/coxeter.hpp"
#include "knop/models.hpp"
#include "knop/orbit_system.hpp"
#include "oracle.hpp"

namespace fixtures {

using knop::CartanMatrix;
using knop::OrbitSystem;
using knop::WeylGroupSpec;
using knop::models::Sl2Variant;

struct NamedCartan {
  std::string name;
  std::vector<std::vector<int>> rows;
  oracle::ConcreteGroup concrete;
};

inline std::vector<NamedCartan> cartan_catalogue() {
  return {
      {"A1", {{2}}, oracle::type_a(1)},
      {"A2", {{2, -1}, {-1, 2}}, oracle::type_a(2)},
      {"A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, oracle::type_a(3)},
      {"B2", {{2, -2}, {-1, 2}}, oracle::type_b(2)},
      {"B3", {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}, oracle::type_b(3)},
      {"G2", {{2, -1}, {-3, 2}}, oracle::dihedral(6)},
  };
}

inline WeylGroupSpec spec(const std::string& name) {
  for (const auto& c : cartan_catalogue()) {
    if (c.name == name) return WeylGroupSpec(CartanMatrix(c.rows));
  }
  throw std::runtime_error("unknown Cartan type " + name);
}

inline oracle::ConcreteGroup concrete(const std::string& name) {
  for (const auto& c : cartan_catalogue()) {
    if (c.name == name) return c.concrete;
  }
  throw std::runtime_error("unknown Cartan type " + name);
}

/// Reads a word back from WeylElement::name(): "s0s1" -> {0, 1}, "e" -> {}.
inline std::vector<std::size_t> word_of_name(const std::string& name) {
  std::vector<std::size_t> word;
  if (name == "e") return word;
  std::size_t k = 0;
  while (k < name.size()) {
    if (name[k] != 's') throw std::runtime_error("bad element name " + name);
    std::size_t end = k + 1;
    while (end < name.size() && name[end] != 's') ++end;
    word.push_back(std::stoul(name.substr(k + 1, end - k - 1)));
    k = end;
  }
  return word;
}

inline OrbitSystem sl2(Sl2Variant v) { return knop::models::sl2_model(v); }

inline const char* variant_name(Sl2Variant v) {
  switch (v) {
    case Sl2Variant::Torus:
      return "torus";
    case Sl2Variant::TorusNormalizer:
      return "ntorus";
    case Sl2Variant::Borel:
      return "borel";
  }
  return "?";
}

inline constexpr Sl2Variant kVariants[] = {
    Sl2Variant::Torus, Sl2Variant::TorusNormalizer, Sl2Variant::Borel};

struct NamedSystem {
  std::string name;
  OrbitSystem system;
  std::size_t weyl_order = 0;  // |W| from the permutation oracles
};

/// Products of 1 to max_factors SL(2) models, all ordered tuples.
inline std::vector<NamedSystem> sl2_products(std::size_t min_factors,
                                             std::size_t max_factors) {
  std::vector<NamedSystem> out;
  std::vector<std::vector<Sl2Variant>> tuples{{}};
  for (std::size_t len = 1; len <= max_factors; ++len) {
    std::vector<std::vector<Sl2Variant>> next;
    for (const auto& t : tuples) {
      for (auto v : kVariants) {
        auto u = t;
        u.push_back(v);
        next.push_back(u);
      }
    }
    tuples = next;
    if (len < min_factors) continue;
    for (const auto& t : tuples) {
      std::vector<OrbitSystem> factors;
      std::string name = "product";
      for (auto v : t) {
        factors.push_back(sl2(v));
        name += std::string("-") + variant_name(v);
      }
      out.push_back({name, knop::models::product_model(factors),
                     std::size_t{1} << t.size()});
    }
  }
  return out;
}

/// Every built-in model the acceptance criteria quantify over.
inline std::vector<NamedSystem> builtin_models() {
  std::vector<NamedSystem> out;
  for (auto v : kVariants) {
    out.push_back({std::string("sl2-") + variant_name(v), sl2(v), 2});
  }
  for (const char* t : {"A1", "A2", "A3", "B2", "B3", "G2"}) {
    out.push_back({std::string("weak-order-") + t,
                   knop::models::weak_order_model(spec(t)),
                   oracle::close(concrete(t)).order()});
  }
  for (const char* t : {"A1", "A2", "B2"}) {
    const auto order = oracle::close(concrete(t)).order();
    out.push_back({std::string("group-case-") + t,
                   knop::models::group_case_model(spec(t)), order * order});
  }
  for (auto& p : sl2_products(1, 3)) out.push_back(std::move(p));
  return out;
}

// Mutations. Each returns a modified copy.

inline OrbitSystem with_edges(const OrbitSystem& s,
                              std::vector<knop::RaisingEdge> edges) {
  return OrbitSystem(s.weyl(), s.vertices(), std::move(edges), s.meta(),
                     s.generator_names());
}

inline OrbitSystem with_vertices(const OrbitSystem& s,
                                 std::vector<knop::OrbitVertex> vertices) {
  return OrbitSystem(s.weyl(), std::move(vertices), s.edges(), s.meta(),
                     s.generator_names());
}

inline OrbitSystem flip_edge_type(const OrbitSystem& s, std::size_t edge,
                                  knop::EdgeType to) {
  auto edges = s.edges();
  edges.at(edge).etype = to;
  return with_edges(s, std::move(edges));
}

inline OrbitSystem reverse_edge(const OrbitSystem& s, std::size_t edge) {
  auto edges = s.edges();
  std::swap(edges.at(edge).source, edges.at(edge).target);
  return with_edges(s, std::move(edges));
}

inline OrbitSystem delete_edge(const OrbitSystem& s, std::size_t edge) {
  auto edges = s.edges();
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(edge));
  return with_edges(s, std::move(edges));
}

inline OrbitSystem change_rank(const OrbitSystem& s, std::size_t vertex,
                               int delta) {
  auto vertices = s.vertices();
  vertices.at(vertex).rank += delta;
  return with_vertices(s, std::move(vertices));
}

inline OrbitSystem set_rank(const OrbitSystem& s, const std::string& id,
                            int rank) {
  auto vertices = s.vertices();
  vertices.at(*s.find(id)).rank = rank;
  return with_vertices(s, std::move(vertices));
}

inline OrbitSystem relabel(const OrbitSystem& s, std::size_t vertex,
                           std::string label) {
  auto vertices = s.vertices();
  vertices.at(vertex).type_label = std::move(label);
  return with_vertices(s, std::move(vertices));
}

/// Renames every vertex id through f.
template <typename F>
OrbitSystem rename(const OrbitSystem& s, F f) {
  auto vertices = s.vertices();
  for (auto& v : vertices) v.id = f(v.id);
  auto edges = s.edges();
  for (auto& e : edges) {
    e.source = f(e.source);
    e.target = f(e.target);
  }
  return OrbitSystem(s.weyl(), std::move(vertices), std::move(edges), s.meta(),
                     s.generator_names());
}

}  // namespace fixtures
