#include "knop/models.hpp"

#include <algorithm>

namespace knop::models {

namespace {

WeylGroupSpec rank_one() { return WeylGroupSpec(CartanMatrix({{2}})); }

OrbitVertex make_vertex(std::string id, int rank, int rho, int dim,
                        std::string_view label) {
  return OrbitVertex{std::move(id), rank, dim, rho, std::string(label)};
}

}  // namespace

OrbitSystem sl2_model(Sl2Variant variant) {
  SystemMeta meta{1, 1, 1, true};
  switch (variant) {
    case Sl2Variant::Torus:
      return OrbitSystem(rank_one(),
                         {make_vertex("closed0", 0, 0, 0, kMaxTorus),
                          make_vertex("closed1", 0, 0, 0, kMaxTorus),
                          make_vertex("open", 1, 1, 1, kTrivialTorus)},
                         {{"closed0", "open", 0, EdgeType::T},
                          {"closed1", "open", 0, EdgeType::T}},
                         meta);
    case Sl2Variant::TorusNormalizer:
      meta.order_WH = 2;
      meta.h_connected = false;
      return OrbitSystem(rank_one(),
                         {make_vertex("closed", 0, 0, 0, kMaxTorus),
                          make_vertex("open", 1, 1, 1, kTrivialTorus)},
                         {{"closed", "open", 0, EdgeType::N}}, meta);
    case Sl2Variant::Borel:
      return OrbitSystem(rank_one(),
                         {make_vertex("cell_e", 0, 0, 0, kMaxTorus),
                          make_vertex("cell_s", 0, 0, 1, kMaxTorus)},
                         {{"cell_e", "cell_s", 0, EdgeType::U}}, meta);
  }
  throw DomainError("unknown SL(2) variant");
}

OrbitSystem weak_order_model(const WeylGroupSpec& spec) {
  const auto elements = enumerate(spec);
  std::vector<OrbitVertex> vertices;
  std::vector<RaisingEdge> edges;
  for (const auto& w : elements) {
    const auto name = w.name();
    vertices.push_back(make_vertex(name, 0, 0, static_cast<int>(w.length()),
                                   kMaxTorus));
    for (GeneratorIndex i = 0; i < spec.rank(); ++i) {
      if (w.has_right_descent(i)) continue;
      edges.push_back(
          {name, (w * simple_reflection(spec, i)).name(), i, EdgeType::U});
    }
  }
  const int n = static_cast<int>(spec.rank());
  return OrbitSystem(spec, std::move(vertices), std::move(edges),
                     SystemMeta{n, n, 1, true});
}

OrbitSystem group_case_model(const WeylGroupSpec& spec) {
  const auto elements = enumerate(spec);
  const std::size_t n = spec.rank();
  const int base_dim = static_cast<int>(spec.positive_roots().size());
  WeylGroupSpec doubled(direct_sum(spec.cartan(), spec.cartan()),
                        spec.element_bound());
  std::vector<OrbitVertex> vertices;
  std::vector<RaisingEdge> edges;
  for (const auto& w : elements) {
    const auto name = w.name();
    OrbitVertex v{name, 0, base_dim + static_cast<int>(w.length()),
                  std::nullopt, std::string(kMaxTorus)};
    vertices.push_back(std::move(v));
    for (GeneratorIndex i = 0; i < n; ++i) {
      const auto s = simple_reflection(spec, i);
      if (!w.has_left_descent(i)) {
        edges.push_back({name, (s * w).name(), i, EdgeType::U});
      }
      if (!w.has_right_descent(i)) {
        edges.push_back({name, (w * s).name(), n + i, EdgeType::U});
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("L" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) names.push_back("R" + std::to_string(i));
  const int rank = static_cast<int>(n);
  return OrbitSystem(doubled, std::move(vertices), std::move(edges),
                     SystemMeta{2 * rank, rank, group_order(spec), true},
                     std::move(names));
}

namespace {

template <typename T, typename F>
std::optional<T> combine(const std::optional<T>& a, const std::optional<T>& b,
                         F f) {
  if (!a || !b) return std::nullopt;
  return f(*a, *b);
}

OrbitSystem product_of_two(const OrbitSystem& x, const OrbitSystem& y,
                           bool wrap_left) {
  // wrap_left=false means x's ids already are an open tuple "(a,b" that the
  // next factor extends; see product_model.
  const std::size_t shift = x.generator_count();
  WeylGroupSpec weyl(direct_sum(x.weyl().cartan(), y.weyl().cartan()),
                     std::min(x.weyl().element_bound(),
                              y.weyl().element_bound()));
  auto id_of = [wrap_left](const std::string& a, const std::string& b) {
    return (wrap_left ? "(" + a : a) + "," + b;
  };
  std::vector<OrbitVertex> vertices;
  for (const auto& a : x.vertices()) {
    for (const auto& b : y.vertices()) {
      OrbitVertex v;
      v.id = id_of(a.id, b.id);
      v.rank = a.rank + b.rank;
      v.dim = combine(a.dim, b.dim, std::plus<int>{});
      v.rho = combine(a.rho, b.rho, std::plus<int>{});
      v.type_label = combine(a.type_label, b.type_label,
                             [](const std::string& s, const std::string& t) {
                               return s + kLabelSeparator + t;
                             });
      vertices.push_back(std::move(v));
    }
  }
  std::vector<RaisingEdge> edges;
  for (const auto& e : x.edges()) {
    for (const auto& b : y.vertices()) {
      edges.push_back(
          {id_of(e.source, b.id), id_of(e.target, b.id), e.root, e.etype});
    }
  }
  for (const auto& e : y.edges()) {
    for (const auto& a : x.vertices()) {
      edges.push_back({id_of(a.id, e.source), id_of(a.id, e.target),
                       shift + e.root, e.etype});
    }
  }
  std::optional<SystemMeta> meta;
  if (x.meta() && y.meta()) {
    const auto& p = *x.meta();
    const auto& q = *y.meta();
    meta = SystemMeta{
        combine(p.rank_G, q.rank_G, std::plus<int>{}),
        combine(p.rank_H, q.rank_H, std::plus<int>{}),
        combine(p.order_WH, q.order_WH, std::multiplies<std::uint64_t>{}),
        combine(p.h_connected, q.h_connected, std::logical_and<bool>{})};
  }
  std::vector<std::string> names;
  if (!x.generator_names().empty() && !y.generator_names().empty()) {
    names = x.generator_names();
    names.insert(names.end(), y.generator_names().begin(),
                 y.generator_names().end());
  }
  return OrbitSystem(std::move(weyl), std::move(vertices), std::move(edges),
                     std::move(meta), std::move(names));
}

OrbitSystem close_tuple(const OrbitSystem& s) {
  auto vertices = s.vertices();
  for (auto& v : vertices) v.id += ")";
  auto edges = s.edges();
  for (auto& e : edges) {
    e.source += ")";
    e.target += ")";
  }
  return OrbitSystem(s.weyl(), std::move(vertices), std::move(edges), s.meta(),
                     s.generator_names());
}

OrbitSystem wrap_single(const OrbitSystem& s) {
  auto vertices = s.vertices();
  for (auto& v : vertices) v.id = "(" + v.id + ")";
  auto edges = s.edges();
  for (auto& e : edges) {
    e.source = "(" + e.source + ")";
    e.target = "(" + e.target + ")";
  }
  return OrbitSystem(s.weyl(), std::move(vertices), std::move(edges), s.meta(),
                     s.generator_names());
}

}  // namespace

OrbitSystem product_model(const std::vector<OrbitSystem>& systems) {
  if (systems.empty()) throw DomainError("product of an empty list");
  for (std::size_t k = 0; k < systems.size(); ++k) {
    require_valid(systems[k], "product_model factor " + std::to_string(k));
  }
  if (systems.size() == 1) return wrap_single(systems.front());
  OrbitSystem acc = product_of_two(systems[0], systems[1], true);
  for (std::size_t k = 2; k < systems.size(); ++k) {
    acc = product_of_two(acc, systems[k], false);
  }
  return close_tuple(acc);
}

std::string flatten_product_id(std::string_view id) {
  std::string inner;
  for (char c : id) {
    if (c != '(' && c != ')') inner += c;
  }
  if (!id.empty() && id.front() == '(') return "(" + inner + ")";
  return inner;
}

}  // namespace knop::models
