#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knop/coxeter.hpp"
#include "knop/orbit_system.hpp"

namespace knop {

/// A permutation of vertex positions: perm[k] is the image of
/// system.vertices()[k]. Positions follow the canonical vertex order
/// (lexicographic by id).
using Permutation = std::vector<std::size_t>;

/// The involution s_alpha on vertices, read off the alpha-fibers:
/// Saturated -> fixed, U-pair -> swapped, T-triple -> the two sources
/// swapped and the target fixed, N-pair -> both fixed.
/// Refuses an invalid system with InvalidSystemError.
Permutation generator_permutation(const OrbitSystem& system,
                                  GeneratorIndex root);

/// One involution per simple root; the action of the free Coxeter group
/// generated by the s_alpha subject only to s_alpha^2 = 1.
class ActionTable {
 public:
  ActionTable(OrbitSystem system, std::vector<Permutation> perms);

  const OrbitSystem& system() const noexcept { return system_; }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }
  const Permutation& perm(GeneratorIndex i) const { return perms_.at(i); }
  std::size_t generator_count() const noexcept { return perms_.size(); }
  std::size_t vertex_count() const noexcept { return system_.vertices().size(); }

  /// s_{word[0]} ... s_{word[k-1]} applied to vertex position v
  /// (the last letter acts first).
  std::size_t apply_word(const std::vector<GeneratorIndex>& word,
                         std::size_t v) const;

 private:
  OrbitSystem system_;
  std::vector<Permutation> perms_;
};

ActionTable build_action(const OrbitSystem& system);

/// Builds the generator involutions from the fibers alone, without the rank,
/// sink and metadata rules. For diagnosing systems that fail validation;
/// still throws FiberShapeError or DomainError if the fibers are malformed.
ActionTable build_action_from_fibers(const OrbitSystem& system);

struct FactoringWitness {
  GeneratorIndex i = 0;
  GeneratorIndex j = 0;  // equal to i when s_i itself is not an involution
  std::string vertex;    // first vertex moved by (s_i s_j)^m

  friend bool operator==(const FactoringWitness&,
                         const FactoringWitness&) = default;
};

struct FactoringResult {
  bool ok = true;
  std::optional<FactoringWitness> witness;
};

/// Checks (s_i s_j)^{m_ij} = 1 for all i < j, together with s_i^2 = 1.
/// These relators normally generate the kernel of the free Coxeter group
/// onto W, so passing means the action descends to W.
FactoringResult verify_factoring(const ActionTable& table);
FactoringResult verify_factoring(const OrbitSystem& system);

struct WOrbitPartition {
  /// Each block sorted by id; blocks ordered by their first id.
  std::vector<std::vector<std::string>> blocks;

  friend bool operator==(const WOrbitPartition&,
                         const WOrbitPartition&) = default;
};

/// Thrown when an operation needs the action of W but the braid relations
/// fail on the system.
class FactoringError : public Error {
 public:
  FactoringError(const std::string& what, FactoringWitness witness)
      : Error(what), witness_(std::move(witness)) {}

  const FactoringWitness& witness() const noexcept { return witness_; }

 private:
  FactoringWitness witness_;
};

/// The action of W on the vertices. Only constructible from a table whose
/// braid relations hold, so the action of w through any reduced word is
/// well defined.
class WeylAction {
 public:
  /// Throws FactoringError when verify_factoring fails.
  explicit WeylAction(ActionTable table);

  const ActionTable& table() const noexcept { return table_; }
  const OrbitSystem& system() const noexcept { return table_.system(); }

  std::size_t apply(const WeylElement& w, std::size_t v) const;
  Permutation permutation(const WeylElement& w) const;

  /// Vertex positions grouped into W-orbits; also fills block_of.
  const std::vector<std::vector<std::size_t>>& orbits() const noexcept {
    return orbits_;
  }
  std::size_t block_of(std::size_t v) const { return block_of_.at(v); }

  WOrbitPartition partition() const;

  /// |W| / |W.v|. Throws ResourceError when |W| exceeds the element bound.
  std::uint64_t stabilizer_order(std::size_t v) const;
  std::vector<WeylElement> stabilizer_elements(std::size_t v) const;

  std::uint64_t group_order() const;

 private:
  ActionTable table_;
  std::vector<std::vector<std::size_t>> orbits_;
  std::vector<std::size_t> block_of_;
  std::optional<std::uint64_t> order_;  // empty when |W| exceeds the bound
};

/// Builds the action of a valid system. Throws InvalidSystemError or
/// FactoringError.
WeylAction weyl_action(const OrbitSystem& system);

WOrbitPartition w_orbit_partition(const OrbitSystem& system);
std::uint64_t stabilizer_order(const OrbitSystem& system, std::string_view id);
std::vector<WeylElement> stabilizer_elements(const OrbitSystem& system,
                                             std::string_view id);

enum class Verdict { Pass, Fail, NotChecked };

std::string_view to_string(Verdict v) noexcept;

struct TypeWitness {
  enum class Kind { SameTypeDifferentOrbits, DifferentTypesSameOrbit };
  Kind kind = Kind::SameTypeDifferentOrbits;
  std::string first;
  std::string second;

  friend bool operator==(const TypeWitness&, const TypeWitness&) = default;
};

std::string_view to_string(TypeWitness::Kind k) noexcept;

struct TypeTheoremResult {
  Verdict verdict = Verdict::NotChecked;
  std::optional<TypeWitness> witness;
  std::string note;
};

/// Pass iff the W-orbit partition equals the partition by type_label;
/// NotChecked when some vertex has no label.
TypeTheoremResult verify_type_theorem(const WeylAction& action);
TypeTheoremResult verify_type_theorem(const OrbitSystem& system);

struct MinimalRankReport {
  std::size_t count = 0;
  int minimal_rank = 0;
  std::vector<std::string> vertices;            // minimal-rank vertices
  std::vector<std::uint64_t> stabilizer_orders;  // parallel to vertices
  std::optional<std::uint64_t> expected;         // |W| / order_WH
  std::optional<bool> pass;
  std::string note;
};

/// Counts minimal-rank vertices and compares with |W| / |W_H| when the
/// metadata says H is connected and gives order_WH.
MinimalRankReport minimal_rank_report(const WeylAction& action);
MinimalRankReport minimal_rank_report(const OrbitSystem& system);

struct OrbitReport {
  std::uint64_t group_order = 0;
  bool factoring_ok = false;
  std::optional<FactoringWitness> factoring_witness;
  WOrbitPartition partition;
  std::map<std::string, std::uint64_t> stabilizer_order;  // by vertex id
  TypeTheoremResult type_theorem;
  MinimalRankReport minimal_rank;
  std::map<std::string, Verdict> theorem_verdicts;
};

/// Full report for a valid system. A failed braid check yields
/// factoring_ok = false with every theorem verdict NotChecked; an invalid
/// system raises InvalidSystemError.
OrbitReport orbit_report(const OrbitSystem& system);

}  // namespace knop
