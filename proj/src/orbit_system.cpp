#include "knop/orbit_system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace knop {

std::string_view to_string(EdgeType t) noexcept {
  switch (t) {
    case EdgeType::U:
      return "U";
    case EdgeType::T:
      return "T";
    case EdgeType::N:
      return "N";
  }
  return "?";
}

std::optional<EdgeType> edge_type_from_string(std::string_view s) noexcept {
  if (s == "U") return EdgeType::U;
  if (s == "T") return EdgeType::T;
  if (s == "N") return EdgeType::N;
  return std::nullopt;
}

std::string_view to_string(FiberShape s) noexcept {
  switch (s) {
    case FiberShape::Saturated:
      return "Saturated";
    case FiberShape::U:
      return "U";
    case FiberShape::T:
      return "T";
    case FiberShape::N:
      return "N";
  }
  return "?";
}

std::string_view to_string(Rule r) noexcept {
  static constexpr std::string_view names[] = {"R1", "R2", "R3", "R4",
                                               "R5", "R6", "R7"};
  return names[static_cast<int>(r) - 1];
}

OrbitSystem::OrbitSystem(WeylGroupSpec weyl, std::vector<OrbitVertex> vertices,
                         std::vector<RaisingEdge> edges,
                         std::optional<SystemMeta> meta,
                         std::vector<std::string> generator_names)
    : weyl_(std::move(weyl)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      meta_(std::move(meta)),
      generator_names_(std::move(generator_names)) {
  std::stable_sort(
      vertices_.begin(), vertices_.end(),
      [](const OrbitVertex& a, const OrbitVertex& b) { return a.id < b.id; });
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const RaisingEdge& a, const RaisingEdge& b) {
                     return std::tie(a.root, a.source, a.target, a.etype) <
                            std::tie(b.root, b.source, b.target, b.etype);
                   });
  if (meta_ && meta_->empty()) meta_.reset();
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    index_.emplace(vertices_[k].id, k);
  }
}

std::optional<std::size_t> OrbitSystem::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const OrbitVertex& OrbitSystem::vertex(std::string_view id) const {
  auto k = find(id);
  if (!k) throw DomainError("unknown vertex id '" + std::string(id) + "'");
  return vertices_[*k];
}

bool operator==(const OrbitSystem& a, const OrbitSystem& b) {
  return a.weyl_.cartan() == b.weyl_.cartan() && a.vertices_ == b.vertices_ &&
         a.edges_ == b.edges_ && a.meta_ == b.meta_ &&
         a.generator_names_ == b.generator_names_;
}

bool ValidationReport::violates(Rule r) const noexcept { return count(r) > 0; }

std::size_t ValidationReport::count(Rule r) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [r](const Violation& v) { return v.rule == r; }));
}

namespace {

std::string describe(const RaisingEdge& e) {
  std::ostringstream os;
  os << to_string(e.etype) << " edge " << e.source << " -> " << e.target
     << " (root " << e.root << ")";
  return os.str();
}

// Edges whose endpoints exist and whose root is in range, as index pairs.
struct GraphView {
  std::vector<std::size_t> good_edges;  // positions in system.edges()
  std::vector<std::size_t> src, dst;    // parallel to good_edges
};

GraphView make_view(const OrbitSystem& system) {
  GraphView view;
  const auto& edges = system.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    auto s = system.find(e.source);
    auto t = system.find(e.target);
    if (!s || !t || e.root >= system.generator_count()) continue;
    view.good_edges.push_back(k);
    view.src.push_back(*s);
    view.dst.push_back(*t);
  }
  return view;
}

struct Component {
  std::vector<std::size_t> members;  // vertex positions, ascending
  std::vector<std::size_t> edges;    // positions in system.edges()
};

struct FiberClassification {
  std::vector<AlphaFiber> fibers;
  std::vector<Component> malformed;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

FiberClassification classify(const OrbitSystem& system, const GraphView& view,
                             GeneratorIndex root) {
  const auto& vertices = system.vertices();
  const auto& edges = system.edges();
  // Duplicated ids resolve to their first occurrence; only those positions
  // participate.
  std::vector<bool> primary(vertices.size(), false);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    primary[k] = system.find(vertices[k].id) == k;
  }
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t g = 0; g < view.good_edges.size(); ++g) {
    if (edges[view.good_edges[g]].root != root) continue;
    auto a = find_root(parent, view.src[g]);
    auto b = find_root(parent, view.dst[g]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, Component> components;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (primary[k]) components[find_root(parent, k)].members.push_back(k);
  }
  for (std::size_t g = 0; g < view.good_edges.size(); ++g) {
    if (edges[view.good_edges[g]].root != root) continue;
    components[find_root(parent, view.src[g])].edges.push_back(
        view.good_edges[g]);
  }

  FiberClassification out;
  for (auto& [rep, c] : components) {
    AlphaFiber fiber;
    fiber.root = root;
    for (auto k : c.members) fiber.members.push_back(vertices[k].id);
    bool ok = false;
    if (c.members.size() == 1 && c.edges.empty()) {
      fiber.shape = FiberShape::Saturated;
      fiber.top = fiber.members.front();
      ok = true;
    } else if (c.members.size() == 2 && c.edges.size() == 1) {
      const auto& e = edges[c.edges[0]];
      if (e.etype != EdgeType::T) {
        fiber.shape = e.etype == EdgeType::U ? FiberShape::U : FiberShape::N;
        fiber.top = e.target;
        ok = true;
      }
    } else if (c.members.size() == 3 && c.edges.size() == 2) {
      const auto& e0 = edges[c.edges[0]];
      const auto& e1 = edges[c.edges[1]];
      if (e0.etype == EdgeType::T && e1.etype == EdgeType::T &&
          e0.target == e1.target && e0.source != e1.source) {
        fiber.shape = FiberShape::T;
        fiber.top = e0.target;
        ok = true;
      }
    }
    if (ok) {
      out.fibers.push_back(std::move(fiber));
    } else {
      out.malformed.push_back(std::move(c));
    }
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

std::vector<std::size_t> sinks(const OrbitSystem& system,
                               const GraphView& view) {
  std::vector<bool> has_out(system.vertices().size(), false);
  for (auto s : view.src) has_out[s] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < system.vertices().size(); ++k) {
    if (system.find(system.vertices()[k].id) != k) continue;
    if (!has_out[k]) out.push_back(k);
  }
  return out;
}

// Vertices from which `target` is reachable along raising edges.
std::vector<bool> reaches(const OrbitSystem& system, const GraphView& view,
                          std::size_t target) {
  std::vector<std::vector<std::size_t>> incoming(system.vertices().size());
  for (std::size_t g = 0; g < view.src.size(); ++g) {
    incoming[view.dst[g]].push_back(view.src[g]);
  }
  std::vector<bool> seen(system.vertices().size(), false);
  std::deque<std::size_t> queue{target};
  seen[target] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto u : incoming[v]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

class ReportBuilder {
 public:
  void add(Rule rule, std::string vertex, std::string message,
           std::vector<std::string> witnesses = {}) {
    report_.violations.push_back(
        {rule, std::move(vertex), std::move(message), std::move(witnesses)});
  }
  void skip(Rule rule, std::string reason) {
    report_.not_checked.push_back({rule, std::move(reason)});
  }
  ValidationReport finish() && {
    std::stable_sort(report_.violations.begin(), report_.violations.end(),
                     [](const Violation& a, const Violation& b) {
                       return std::tie(a.rule, a.vertex, a.message) <
                              std::tie(b.rule, b.vertex, b.message);
                     });
    std::stable_sort(
        report_.not_checked.begin(), report_.not_checked.end(),
        [](const SkippedRule& a, const SkippedRule& b) { return a.rule < b.rule; });
    return std::move(report_);
  }

 private:
  ValidationReport report_;
};

void check_integrity(const OrbitSystem& system, ReportBuilder& out) {
  const auto& vertices = system.vertices();
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& v = vertices[k];
    if (v.id.empty()) out.add(Rule::R1, v.id, "vertex with empty id");
    if (k > 0 && vertices[k - 1].id == v.id) {
      out.add(Rule::R1, v.id, "duplicate vertex id '" + v.id + "'", {v.id});
    }
    if (v.rank < 0) out.add(Rule::R1, v.id, "negative rank on " + v.id);
    if (v.dim && *v.dim < 0) out.add(Rule::R1, v.id, "negative dim on " + v.id);
    if (v.rho && *v.rho < 0) out.add(Rule::R1, v.id, "negative rho on " + v.id);
  }
  for (const auto& e : system.edges()) {
    if (!system.find(e.source)) {
      out.add(Rule::R1, e.source, describe(e) + ": unknown source", {e.source});
    }
    if (!system.find(e.target)) {
      out.add(Rule::R1, e.source, describe(e) + ": unknown target", {e.target});
    }
    if (e.root >= system.generator_count()) {
      out.add(Rule::R1, e.source,
              describe(e) + ": root out of range (rank " +
                  std::to_string(system.generator_count()) + ")",
              {e.source, e.target});
    }
    if (e.source == e.target) {
      out.add(Rule::R1, e.source, describe(e) + ": self-loop", {e.source});
    }
  }
}

void check_ranks(const OrbitSystem& system, const GraphView& view,
                 ReportBuilder& out) {
  const auto& vertices = system.vertices();
  for (std::size_t g = 0; g < view.good_edges.size(); ++g) {
    const auto& e = system.edges()[view.good_edges[g]];
    const int from = vertices[view.src[g]].rank;
    const int to = vertices[view.dst[g]].rank;
    const int expected = e.etype == EdgeType::U ? from : from + 1;
    if (to != expected) {
      out.add(Rule::R3, e.source,
              describe(e) + ": rank " + std::to_string(from) + " -> " +
                  std::to_string(to) + ", expected " + std::to_string(expected),
              {e.source, e.target});
    }
  }
}

void check_sink(const OrbitSystem& system, const GraphView& view,
                ReportBuilder& out) {
  const auto& vertices = system.vertices();
  if (vertices.empty()) {
    out.add(Rule::R4, "", "system has no vertices");
    return;
  }
  auto found = sinks(system, view);
  if (found.empty()) {
    out.add(Rule::R4, vertices.front().id,
            "no vertex without outgoing raising edges (no open orbit)");
    return;
  }
  if (found.size() > 1) {
    std::vector<std::string> ids;
    for (auto k : found) ids.push_back(vertices[k].id);
    out.add(Rule::R4, ids.front(),
            std::to_string(ids.size()) + " sinks: " + join_ids(ids), ids);
    return;
  }
  auto ok = reaches(system, view, found.front());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (system.find(vertices[k].id) != k) continue;
    if (!ok[k]) {
      out.add(Rule::R4, vertices[k].id,
              vertices[k].id + " does not reach the open orbit " +
                  vertices[found.front()].id,
              {vertices[k].id, vertices[found.front()].id});
    }
  }
}

// rho_V - rk(V) = rk(G) - rk(H).
void check_rho(const OrbitSystem& system, ReportBuilder& out) {
  std::vector<const OrbitVertex*> with_rho;
  for (const auto& v : system.vertices()) {
    if (v.rho) with_rho.push_back(&v);
  }
  const std::size_t total = system.vertices().size();
  if (with_rho.empty()) {
    out.skip(Rule::R5, "rho absent on every vertex");
    return;
  }
  if (with_rho.size() < total) {
    out.skip(Rule::R5, "rho absent on " +
                           std::to_string(total - with_rho.size()) + " of " +
                           std::to_string(total) +
                           " vertices; checked on the rest");
  }
  std::optional<int> expected;
  std::string origin;
  const auto& meta = system.meta();
  if (meta && meta->rank_G && meta->rank_H) {
    expected = *meta->rank_G - *meta->rank_H;
    origin = "rank_G - rank_H";
  } else {
    std::map<int, std::size_t> freq;
    for (auto* v : with_rho) ++freq[*v->rho - v->rank];
    auto best = std::max_element(
        freq.begin(), freq.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    expected = best->first;
    origin = "the most common rho - rank";
  }
  for (auto* v : with_rho) {
    const int d = *v->rho - v->rank;
    if (d != *expected) {
      out.add(Rule::R5, v->id,
              v->id + ": rho - rank = " + std::to_string(d) + ", expected " +
                  std::to_string(*expected) + " (" + origin + ")",
              {v->id});
    }
  }
}

void check_dims(const OrbitSystem& system, const GraphView& view,
                ReportBuilder& out) {
  const auto& vertices = system.vertices();
  std::size_t checked = 0;
  for (std::size_t g = 0; g < view.good_edges.size(); ++g) {
    const auto& from = vertices[view.src[g]];
    const auto& to = vertices[view.dst[g]];
    if (!from.dim || !to.dim) continue;
    ++checked;
    if (*to.dim != *from.dim + 1) {
      const auto& e = system.edges()[view.good_edges[g]];
      out.add(Rule::R6, e.source,
              describe(e) + ": dim " + std::to_string(*from.dim) + " -> " +
                  std::to_string(*to.dim) + ", expected " +
                  std::to_string(*from.dim + 1),
              {e.source, e.target});
    }
  }
  if (checked == 0 && !view.good_edges.empty()) {
    out.skip(Rule::R6, "no edge has dim on both endpoints");
  } else if (checked < view.good_edges.size()) {
    out.skip(Rule::R6, "dim missing on an endpoint of " +
                           std::to_string(view.good_edges.size() - checked) +
                           " edges; checked on the rest");
  }
}

}  // namespace

std::vector<AlphaFiber> fibers(const OrbitSystem& system, GeneratorIndex root) {
  if (root >= system.generator_count()) {
    throw DomainError("root index out of range");
  }
  for (const auto& e : system.edges()) {
    if (!system.find(e.source) || !system.find(e.target)) {
      throw DomainError(describe(e) + " references an unknown vertex");
    }
  }
  auto view = make_view(system);
  auto result = classify(system, view, root);
  if (!result.malformed.empty()) {
    std::vector<std::string> ids;
    for (auto k : result.malformed.front().members) {
      ids.push_back(system.vertices()[k].id);
    }
    throw FiberShapeError("root " + std::to_string(root) +
                              ": malformed fiber {" + join_ids(ids) + "}",
                          root, ids);
  }
  return std::move(result.fibers);
}

ValidationReport validate(const OrbitSystem& system) {
  ReportBuilder out;
  check_integrity(system, out);
  auto view = make_view(system);

  for (GeneratorIndex root = 0; root < system.generator_count(); ++root) {
    auto result = classify(system, view, root);
    for (const auto& c : result.malformed) {
      std::vector<std::string> ids;
      for (auto k : c.members) ids.push_back(system.vertices()[k].id);
      std::string message = "root " + std::to_string(root) +
                            ": fiber {" + join_ids(ids) + "} with " +
                            std::to_string(c.edges.size()) +
                            " edges is not Saturated, U, T or N";
      out.add(Rule::R2, ids.front(), std::move(message), ids);
    }
    for (const auto& f : result.fibers) {
      if (f.shape != FiberShape::T) continue;
      std::vector<std::string> sources;
      for (const auto& m : f.members) {
        if (m != f.top) sources.push_back(m);
      }
      const int r0 = system.vertex(sources[0]).rank;
      const int r1 = system.vertex(sources[1]).rank;
      if (r0 != r1) {
        out.add(Rule::R7, sources[0],
                "root " + std::to_string(root) + ": T sources " + sources[0] +
                    " (rank " + std::to_string(r0) + ") and " + sources[1] +
                    " (rank " + std::to_string(r1) + ") differ in rank",
                sources);
      }
    }
  }

  check_ranks(system, view, out);
  check_sink(system, view, out);
  check_rho(system, out);
  check_dims(system, view, out);
  return std::move(out).finish();
}

void require_valid(const OrbitSystem& system, std::string_view operation) {
  auto report = validate(system);
  if (!report.ok()) {
    throw InvalidSystemError(std::string(operation) +
                                 ": system fails validation (" +
                                 std::to_string(report.violations.size()) +
                                 " violations)",
                             std::move(report));
  }
}

std::string open_orbit(const OrbitSystem& system) {
  auto view = make_view(system);
  auto found = sinks(system, view);
  if (found.size() != 1) {
    ReportBuilder out;
    check_sink(system, view, out);
    throw InvalidSystemError(
        "expected exactly one open orbit, found " + std::to_string(found.size()),
        std::move(out).finish());
  }
  return system.vertices()[found.front()].id;
}

bool raising_reachable(const OrbitSystem& system, std::string_view id) {
  auto k = system.find(id);
  if (!k) throw DomainError("unknown vertex id '" + std::string(id) + "'");
  auto view = make_view(system);
  auto found = sinks(system, view);
  if (found.size() != 1) return false;
  return reaches(system, view, found.front())[*k];
}

}  // namespace knop
