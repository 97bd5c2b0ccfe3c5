#include <map>
#include <set>

#include "doctest.h"
#include "knop/knop_action.hpp"
#include "knop/models.hpp"
#include "support/fixtures.hpp"

using namespace knop;
using fixtures::spec;

namespace {

std::size_t pos(const OrbitSystem& s, const std::string& id) { return *s.find(id); }

const std::string& id_at(const OrbitSystem& s, std::size_t k) {
  return s.vertices().at(k).id;
}

// Oracle image of a vertex named by a reduced word.
oracle::Perm image(const oracle::ConcreteGroup& g, const std::string& name) {
  return g.evaluate(fixtures::word_of_name(name));
}

}  // namespace

TEST_CASE("generator involutions of the SL(2) models") {
  using models::Sl2Variant;
  const auto torus = fixtures::sl2(Sl2Variant::Torus);
  // closed0, closed1, open
  CHECK(generator_permutation(torus, 0) == Permutation{1, 0, 2});
  const auto ntorus = fixtures::sl2(Sl2Variant::TorusNormalizer);
  CHECK(generator_permutation(ntorus, 0) == Permutation{0, 1});
  const auto borel = fixtures::sl2(Sl2Variant::Borel);
  CHECK(generator_permutation(borel, 0) == Permutation{1, 0});

  CHECK(w_orbit_partition(torus).blocks ==
        std::vector<std::vector<std::string>>{{"closed0", "closed1"}, {"open"}});
  CHECK(w_orbit_partition(ntorus).blocks ==
        std::vector<std::vector<std::string>>{{"closed"}, {"open"}});
  CHECK(w_orbit_partition(borel).blocks ==
        std::vector<std::vector<std::string>>{{"cell_e", "cell_s"}});
  CHECK(stabilizer_order(torus, "closed0") == 1);
  CHECK(stabilizer_order(torus, "open") == 2);
  CHECK(stabilizer_order(ntorus, "closed") == 2);
  CHECK(stabilizer_order(borel, "cell_e") == 1);
}

TEST_CASE("build_action refuses invalid systems") {
  const auto torus = fixtures::sl2(models::Sl2Variant::Torus);
  const auto broken = fixtures::set_rank(torus, "open", 0);
  CHECK_THROWS_AS(build_action(broken), InvalidSystemError);
  CHECK_THROWS_AS(generator_permutation(broken, 0), InvalidSystemError);
  CHECK_THROWS_AS(weyl_action(broken), InvalidSystemError);
  CHECK_THROWS_AS(orbit_report(broken), InvalidSystemError);
  CHECK_THROWS_AS(ActionTable(torus, {}), DomainError);
}

TEST_CASE("braid relations hold on every built-in model") {
  for (const auto& m : fixtures::builtin_models()) {
    CAPTURE(m.name);
    const auto result = verify_factoring(m.system);
    CHECK(result.ok);
    CHECK_FALSE(result.witness.has_value());
  }
}

TEST_CASE("retyping the U edges of one root to N breaks the braid relation") {
  const auto system = models::weak_order_model(spec("A2"));
  auto edges = system.edges();
  for (auto& e : edges) {
    if (e.root == 0) e.etype = EdgeType::N;
  }
  const auto broken = fixtures::with_edges(system, edges);
  CHECK_FALSE(validate(broken).ok());
  const auto table = build_action_from_fibers(broken);
  const auto result = verify_factoring(table);
  REQUIRE_FALSE(result.ok);
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->i == 0);
  CHECK(result.witness->j == 1);
  CHECK_THROWS_AS(WeylAction{table}, FactoringError);
}

TEST_CASE("a non-involutive table is caught as an i == j witness") {
  const auto torus = fixtures::sl2(models::Sl2Variant::Torus);
  ActionTable table(torus, {{1, 2, 0}});
  const auto result = verify_factoring(table);
  REQUIRE_FALSE(result.ok);
  CHECK(result.witness->i == 0);
  CHECK(result.witness->j == 0);
}

TEST_CASE("words act last letter first") {
  const auto system = models::weak_order_model(spec("A2"));
  const auto table = build_action(system);
  const auto e = pos(system, "e");
  // s0 s1 applied to e: s1 first gives s1, then s0 gives s1s0
  CHECK(id_at(system, table.apply_word({0, 1}, e)) == "s1s0");
}

TEST_CASE("weak order: the action is right-regular (oracle)") {
  // For H = B the generator s_i swaps u and u s_i, so a word w acts by
  // u -> u w^{-1}. The oracle evaluates both sides in the permutation group.
  for (const auto& c : fixtures::cartan_catalogue()) {
    CAPTURE(c.name);
    WeylGroupSpec w{CartanMatrix(c.rows)};
    const auto system = models::weak_order_model(w);
    const auto action = weyl_action(system);
    const auto elements = enumerate(w);
    for (const auto& g : elements) {
      const auto g_inv = oracle::invert(c.concrete.evaluate(g.reduced_word()));
      for (std::size_t v = 0; v < system.vertices().size(); ++v) {
        const auto& name = id_at(system, v);
        const auto got = image(c.concrete, id_at(system, action.apply(g, v)));
        REQUIRE(got == oracle::compose(image(c.concrete, name), g_inv));
      }
    }
    CHECK(action.orbits().size() == 1);
    for (std::size_t v = 0; v < system.vertices().size(); ++v) {
      CHECK(action.stabilizer_order(v) == 1);
    }
  }
}

TEST_CASE("group case: left and right copies act by u -> a u b^{-1} (oracle)") {
  for (const char* name : {"A1", "A2", "B2"}) {
    CAPTURE(name);
    const auto base = spec(name);
    const auto g = fixtures::concrete(name);
    const std::size_t n = base.rank();
    const auto system = models::group_case_model(base);
    const auto action = weyl_action(system);
    for (const auto& x : enumerate(system.weyl())) {
      std::vector<std::size_t> left, right;
      for (auto letter : x.reduced_word()) {
        (letter < n ? left : right).push_back(letter % n);
      }
      const auto a = g.evaluate(left);
      const auto b_inv = oracle::invert(g.evaluate(right));
      for (std::size_t v = 0; v < system.vertices().size(); ++v) {
        const auto got = image(g, id_at(system, action.apply(x, v)));
        const auto want =
            oracle::compose(oracle::compose(a, image(g, id_at(system, v))), b_inv);
        REQUIRE(got == want);
      }
    }
    // |W x W| / |W| = |W| for the diagonal stabilizer
    const auto order = oracle::close(g).order();
    CHECK(action.orbits().size() == 1);
    CHECK(action.stabilizer_order(0) == order);
  }
}

TEST_CASE("orbit-stabilizer and explicit stabilizers") {
  for (const auto& m : fixtures::builtin_models()) {
    CAPTURE(m.name);
    const auto action = weyl_action(m.system);
    const auto order = action.group_order();
    CHECK(order == group_order(m.system.weyl()));
    if (order > 200) continue;
    for (const auto& block : action.orbits()) {
      for (auto v : block) {
        CHECK(block.size() * action.stabilizer_order(v) == order);
        const auto stab = action.stabilizer_elements(v);
        CHECK(stab.size() == action.stabilizer_order(v));
        for (const auto& s : stab) CHECK(action.apply(s, v) == v);
      }
    }
  }
}

TEST_CASE("W-orbits preserve rank") {
  for (const auto& m : fixtures::builtin_models()) {
    CAPTURE(m.name);
    const auto action = weyl_action(m.system);
    for (const auto& block : action.orbits()) {
      std::set<int> ranks;
      for (auto v : block) ranks.insert(m.system.vertices()[v].rank);
      CHECK(ranks.size() == 1);
    }
  }
}

TEST_CASE("permutation of an element agrees with apply") {
  const auto system = models::weak_order_model(spec("B2"));
  const auto action = weyl_action(system);
  for (const auto& x : enumerate(system.weyl())) {
    const auto p = action.permutation(x);
    for (std::size_t v = 0; v < p.size(); ++v) CHECK(p[v] == action.apply(x, v));
  }
  CHECK_THROWS_AS(action.apply(simple_reflection(spec("A2"), 0), 0), DomainError);
}

TEST_CASE("type theorem") {
  for (const auto& m : fixtures::builtin_models()) {
    CAPTURE(m.name);
    CHECK(verify_type_theorem(m.system).verdict == Verdict::Pass);
  }

  const auto torus = fixtures::sl2(models::Sl2Variant::Torus);
  // same type, different orbits
  const auto merged = fixtures::relabel(torus, pos(torus, "open"), "max-torus");
  const auto a = verify_type_theorem(merged);
  CHECK(a.verdict == Verdict::Fail);
  REQUIRE(a.witness.has_value());
  CHECK(a.witness->kind == TypeWitness::Kind::SameTypeDifferentOrbits);

  // different types, same orbit
  const auto split = fixtures::relabel(torus, pos(torus, "closed1"), "other");
  const auto b = verify_type_theorem(split);
  CHECK(b.verdict == Verdict::Fail);
  REQUIRE(b.witness.has_value());
  CHECK(b.witness->kind == TypeWitness::Kind::DifferentTypesSameOrbit);
  CHECK(b.witness->first == "closed0");
  CHECK(b.witness->second == "closed1");

  auto vertices = torus.vertices();
  vertices[0].type_label.reset();
  const auto c = verify_type_theorem(fixtures::with_vertices(torus, vertices));
  CHECK(c.verdict == Verdict::NotChecked);
  CHECK_FALSE(c.note.empty());
}

TEST_CASE("minimal-rank counts") {
  using models::Sl2Variant;
  // |W| / |W_H| with |W| = 2
  const std::map<Sl2Variant, std::size_t> expected = {
      {Sl2Variant::Torus, 2},
      {Sl2Variant::TorusNormalizer, 1},
      {Sl2Variant::Borel, 2},
  };
  for (auto v : fixtures::kVariants) {
    CAPTURE(fixtures::variant_name(v));
    const auto r = minimal_rank_report(fixtures::sl2(v));
    CHECK(r.count == expected.at(v));
    CHECK(r.minimal_rank == 0);
    if (v == Sl2Variant::TorusNormalizer) {
      // H is disconnected so the comparison is not made
      CHECK_FALSE(r.pass.has_value());
      CHECK_FALSE(r.note.empty());
    } else {
      CHECK(r.pass == true);
      CHECK(r.expected == expected.at(v));
    }
  }
  for (const auto& m : fixtures::builtin_models()) {
    CAPTURE(m.name);
    const auto r = minimal_rank_report(m.system);
    CHECK(r.vertices.size() == r.count);
    CHECK(r.stabilizer_orders.size() == r.count);
    if (r.pass) CHECK(*r.pass);
  }
}

TEST_CASE("minimal-rank comparison fails when order_WH disagrees") {
  const auto torus = fixtures::sl2(models::Sl2Variant::Torus);
  auto meta = *torus.meta();
  meta.order_WH = 2;
  OrbitSystem wrong(torus.weyl(), torus.vertices(), torus.edges(), meta);
  const auto r = minimal_rank_report(wrong);
  CHECK(r.expected == 1);
  CHECK(r.pass == false);
  const auto report = orbit_report(wrong);
  CHECK(report.theorem_verdicts.at("minimal_rank") == Verdict::Fail);
}

TEST_CASE("orbit report") {
  const auto torus = fixtures::sl2(models::Sl2Variant::Torus);
  const auto r = orbit_report(torus);
  CHECK(r.group_order == 2);
  CHECK(r.factoring_ok);
  CHECK(r.stabilizer_order.at("open") == 2);
  CHECK(r.theorem_verdicts.at("factoring") == Verdict::Pass);
  CHECK(r.theorem_verdicts.at("type_theorem") == Verdict::Pass);
  CHECK(r.theorem_verdicts.at("minimal_rank") == Verdict::Pass);
  CHECK(to_string(Verdict::NotChecked) == "not-checked");
}

TEST_CASE("stabilizer orders beyond the element bound raise ResourceError") {
  const auto product = models::product_model(
      {fixtures::sl2(models::Sl2Variant::Torus),
       fixtures::sl2(models::Sl2Variant::Torus),
       fixtures::sl2(models::Sl2Variant::Torus)});
  OrbitSystem bounded(product.weyl().with_element_bound(4), product.vertices(),
                      product.edges(), product.meta());
  const auto action = weyl_action(bounded);
  CHECK(action.orbits().size() == 8);
  CHECK_THROWS_AS(action.stabilizer_order(0), ResourceError);
  CHECK_THROWS_AS(action.group_order(), ResourceError);
}
