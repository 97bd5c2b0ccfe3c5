#include "knop/knop_action.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace knop {

namespace {

Permutation permutation_from_fibers(const OrbitSystem& system,
                                    GeneratorIndex root) {
  Permutation perm(system.vertices().size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto pos = [&](const std::string& id) { return *system.find(id); };
  for (const auto& fiber : fibers(system, root)) {
    switch (fiber.shape) {
      case FiberShape::Saturated:
      case FiberShape::N:
        break;
      case FiberShape::U: {
        auto a = pos(fiber.members[0]);
        auto b = pos(fiber.members[1]);
        perm[a] = b;
        perm[b] = a;
        break;
      }
      case FiberShape::T: {
        std::vector<std::size_t> sources;
        for (const auto& m : fiber.members) {
          if (m != fiber.top) sources.push_back(pos(m));
        }
        perm[sources[0]] = sources[1];
        perm[sources[1]] = sources[0];
        break;
      }
    }
  }
  return perm;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) out[k] = outer[inner[k]];
  return out;
}

bool is_identity(const Permutation& p, std::size_t* moved) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] != k) {
      if (moved) *moved = k;
      return false;
    }
  }
  return true;
}

}  // namespace

Permutation generator_permutation(const OrbitSystem& system,
                                  GeneratorIndex root) {
  require_valid(system, "generator_permutation");
  if (root >= system.generator_count()) {
    throw DomainError("root index out of range");
  }
  return permutation_from_fibers(system, root);
}

ActionTable::ActionTable(OrbitSystem system, std::vector<Permutation> perms)
    : system_(std::move(system)), perms_(std::move(perms)) {
  if (perms_.size() != system_.generator_count()) {
    throw DomainError("action table needs one permutation per generator");
  }
  for (const auto& p : perms_) {
    if (p.size() != system_.vertices().size()) {
      throw DomainError("permutation size differs from vertex count");
    }
  }
}

std::size_t ActionTable::apply_word(const std::vector<GeneratorIndex>& word,
                                    std::size_t v) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = perms_.at(*it)[v];
  return v;
}

ActionTable build_action(const OrbitSystem& system) {
  require_valid(system, "build_action");
  return build_action_from_fibers(system);
}

ActionTable build_action_from_fibers(const OrbitSystem& system) {
  std::vector<Permutation> perms;
  for (GeneratorIndex i = 0; i < system.generator_count(); ++i) {
    perms.push_back(permutation_from_fibers(system, i));
  }
  return ActionTable(system, std::move(perms));
}

FactoringResult verify_factoring(const ActionTable& table) {
  const auto& names = table.system().vertices();
  const std::size_t n = table.generator_count();
  for (GeneratorIndex i = 0; i < n; ++i) {
    std::size_t moved = 0;
    if (!is_identity(compose(table.perm(i), table.perm(i)), &moved)) {
      return {false, FactoringWitness{i, i, names[moved].id}};
    }
  }
  const auto& weyl = table.system().weyl();
  for (GeneratorIndex i = 0; i < n; ++i) {
    for (GeneratorIndex j = i + 1; j < n; ++j) {
      const auto product = compose(table.perm(i), table.perm(j));
      Permutation power(product.size());
      std::iota(power.begin(), power.end(), std::size_t{0});
      for (int k = 0; k < weyl.braid_order(i, j); ++k) {
        power = compose(product, power);
      }
      std::size_t moved = 0;
      if (!is_identity(power, &moved)) {
        return {false, FactoringWitness{i, j, names[moved].id}};
      }
    }
  }
  return {true, std::nullopt};
}

FactoringResult verify_factoring(const OrbitSystem& system) {
  return verify_factoring(build_action(system));
}

WeylAction::WeylAction(ActionTable table) : table_(std::move(table)) {
  auto result = verify_factoring(table_);
  if (!result.ok) {
    const auto& w = *result.witness;
    throw FactoringError("braid relation fails for generators " +
                             std::to_string(w.i) + ", " + std::to_string(w.j) +
                             " at vertex " + w.vertex,
                         w);
  }
  const std::size_t count = table_.vertex_count();
  block_of_.assign(count, count);
  for (std::size_t seed = 0; seed < count; ++seed) {
    if (block_of_[seed] != count) continue;
    const std::size_t block = orbits_.size();
    std::vector<std::size_t> members{seed};
    block_of_[seed] = block;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& p : table_.perms()) {
        auto next = p[members[head]];
        if (block_of_[next] == count) {
          block_of_[next] = block;
          members.push_back(next);
        }
      }
    }
    std::sort(members.begin(), members.end());
    orbits_.push_back(std::move(members));
  }
  try {
    order_ = knop::group_order(system().weyl());
  } catch (const ResourceError&) {
    order_.reset();
  }
}

std::size_t WeylAction::apply(const WeylElement& w, std::size_t v) const {
  if (!w.spec().same_group(system().weyl())) {
    throw DomainError("element belongs to a different Weyl group");
  }
  return table_.apply_word(w.reduced_word(), v);
}

Permutation WeylAction::permutation(const WeylElement& w) const {
  if (!w.spec().same_group(system().weyl())) {
    throw DomainError("element belongs to a different Weyl group");
  }
  const auto word = w.reduced_word();
  Permutation out(table_.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = table_.apply_word(word, v);
  return out;
}

WOrbitPartition WeylAction::partition() const {
  // orbits_ is seeded in vertex order, so blocks already come sorted by
  // their smallest id.
  WOrbitPartition out;
  const auto& vertices = system().vertices();
  for (const auto& block : orbits_) {
    std::vector<std::string> ids;
    for (auto v : block) ids.push_back(vertices[v].id);
    out.blocks.push_back(std::move(ids));
  }
  return out;
}

std::uint64_t WeylAction::group_order() const {
  if (!order_) {
    const auto bound = system().weyl().element_bound();
    throw ResourceError("Weyl group exceeds the element bound " +
                            std::to_string(bound),
                        bound);
  }
  return *order_;
}

std::uint64_t WeylAction::stabilizer_order(std::size_t v) const {
  return group_order() / orbits_.at(block_of(v)).size();
}

std::vector<WeylElement> WeylAction::stabilizer_elements(std::size_t v) const {
  std::vector<WeylElement> out;
  for (auto& w : enumerate(system().weyl())) {
    if (table_.apply_word(w.reduced_word(), v) == v) out.push_back(std::move(w));
  }
  return out;
}

WeylAction weyl_action(const OrbitSystem& system) {
  return WeylAction(build_action(system));
}

WOrbitPartition w_orbit_partition(const OrbitSystem& system) {
  return weyl_action(system).partition();
}

namespace {

std::size_t position(const OrbitSystem& system, std::string_view id) {
  auto k = system.find(id);
  if (!k) throw DomainError("unknown vertex id '" + std::string(id) + "'");
  return *k;
}

}  // namespace

std::uint64_t stabilizer_order(const OrbitSystem& system, std::string_view id) {
  auto action = weyl_action(system);
  return action.stabilizer_order(position(system, id));
}

std::vector<WeylElement> stabilizer_elements(const OrbitSystem& system,
                                             std::string_view id) {
  auto action = weyl_action(system);
  return action.stabilizer_elements(position(system, id));
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotChecked:
      return "not-checked";
  }
  return "?";
}

std::string_view to_string(TypeWitness::Kind k) noexcept {
  switch (k) {
    case TypeWitness::Kind::SameTypeDifferentOrbits:
      return "same-type-different-orbits";
    case TypeWitness::Kind::DifferentTypesSameOrbit:
      return "different-types-same-orbit";
  }
  return "?";
}

TypeTheoremResult verify_type_theorem(const WeylAction& action) {
  const auto& vertices = action.system().vertices();
  TypeTheoremResult result;
  for (const auto& v : vertices) {
    if (!v.type_label) {
      result.verdict = Verdict::NotChecked;
      result.note = "vertex " + v.id + " has no type_label";
      return result;
    }
  }
  // First vertex seen in each block and with each label; any disagreement
  // between the two maps is a witness.
  std::unordered_map<std::size_t, std::size_t> first_in_block;
  std::unordered_map<std::string, std::size_t> first_with_label;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto block = action.block_of(v);
    const auto& label = *vertices[v].type_label;
    auto [b, new_block] = first_in_block.emplace(block, v);
    if (!new_block && *vertices[b->second].type_label != label) {
      result.verdict = Verdict::Fail;
      result.witness = TypeWitness{TypeWitness::Kind::DifferentTypesSameOrbit,
                                   vertices[b->second].id, vertices[v].id};
      return result;
    }
    auto [l, new_label] = first_with_label.emplace(label, v);
    if (!new_label && action.block_of(l->second) != block) {
      result.verdict = Verdict::Fail;
      result.witness = TypeWitness{TypeWitness::Kind::SameTypeDifferentOrbits,
                                   vertices[l->second].id, vertices[v].id};
      return result;
    }
  }
  result.verdict = Verdict::Pass;
  return result;
}

TypeTheoremResult verify_type_theorem(const OrbitSystem& system) {
  return verify_type_theorem(weyl_action(system));
}

MinimalRankReport minimal_rank_report(const WeylAction& action) {
  const auto& vertices = action.system().vertices();
  MinimalRankReport report;
  if (vertices.empty()) return report;
  report.minimal_rank =
      std::min_element(vertices.begin(), vertices.end(),
                       [](const OrbitVertex& a, const OrbitVertex& b) {
                         return a.rank < b.rank;
                       })
          ->rank;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].rank != report.minimal_rank) continue;
    report.vertices.push_back(vertices[v].id);
    report.stabilizer_orders.push_back(action.stabilizer_order(v));
  }
  report.count = report.vertices.size();

  const auto& meta = action.system().meta();
  if (!meta || !meta->h_connected || !meta->order_WH) {
    report.note = "metadata lacks h_connected or order_WH; count not compared";
    return report;
  }
  if (!*meta->h_connected) {
    report.note = "H is not connected; count not compared";
    return report;
  }
  const std::uint64_t order_wh = *meta->order_WH;
  const std::uint64_t order_w = action.group_order();
  if (order_wh == 0 || order_w % order_wh != 0) {
    report.pass = false;
    report.note = "order_WH does not divide |W| = " + std::to_string(order_w);
    return report;
  }
  report.expected = order_w / order_wh;
  const bool stabilizers_match =
      std::all_of(report.stabilizer_orders.begin(),
                  report.stabilizer_orders.end(),
                  [order_wh](std::uint64_t s) { return s == order_wh; });
  report.pass = report.count == *report.expected && stabilizers_match;
  if (!stabilizers_match) {
    report.note = "a minimal-rank stabilizer order differs from order_WH";
  }
  return report;
}

MinimalRankReport minimal_rank_report(const OrbitSystem& system) {
  return minimal_rank_report(weyl_action(system));
}

OrbitReport orbit_report(const OrbitSystem& system) {
  auto table = build_action(system);
  OrbitReport report;
  auto factoring = verify_factoring(table);
  report.factoring_ok = factoring.ok;
  report.factoring_witness = factoring.witness;
  report.theorem_verdicts["factoring"] =
      factoring.ok ? Verdict::Pass : Verdict::Fail;
  if (!factoring.ok) {
    report.theorem_verdicts["type_theorem"] = Verdict::NotChecked;
    report.theorem_verdicts["minimal_rank"] = Verdict::NotChecked;
    report.type_theorem.note = "braid relations fail";
    report.minimal_rank.note = "braid relations fail";
    return report;
  }
  WeylAction action(std::move(table));
  report.group_order = action.group_order();
  report.partition = action.partition();
  const auto& vertices = action.system().vertices();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    report.stabilizer_order[vertices[v].id] = action.stabilizer_order(v);
  }
  report.type_theorem = verify_type_theorem(action);
  report.theorem_verdicts["type_theorem"] = report.type_theorem.verdict;
  report.minimal_rank = minimal_rank_report(action);
  report.theorem_verdicts["minimal_rank"] =
      !report.minimal_rank.pass
          ? Verdict::NotChecked
          : (*report.minimal_rank.pass ? Verdict::Pass : Verdict::Fail);
  return report;
}

}  // namespace knop
