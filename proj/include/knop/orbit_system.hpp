#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knop/coxeter.hpp"
#include "knop/errors.hpp"

namespace knop {

/// Local shape of an alpha-fiber above a raising edge:
/// U is two orbits of degree 1, T three orbits, N two orbits of degree 2.
enum class EdgeType { U, T, N };

std::string_view to_string(EdgeType t) noexcept;
std::optional<EdgeType> edge_type_from_string(std::string_view s) noexcept;

/// One H-orbit in the flag variety.
struct OrbitVertex {
  std::string id;
  int rank = 0;
  std::optional<int> dim;
  std::optional<int> rho;  // minimal dimension of a T^H-orbit in V
  std::optional<std::string> type_label;

  friend bool operator==(const OrbitVertex&, const OrbitVertex&) = default;
};

/// `root` raises `source` to `target`; the target is the open orbit of the
/// fiber.
struct RaisingEdge {
  std::string source;
  std::string target;
  GeneratorIndex root = 0;
  EdgeType etype = EdgeType::U;

  friend bool operator==(const RaisingEdge&, const RaisingEdge&) = default;
};

struct SystemMeta {
  std::optional<int> rank_G;
  std::optional<int> rank_H;
  std::optional<std::uint64_t> order_WH;
  std::optional<bool> h_connected;

  bool empty() const noexcept {
    return !rank_G && !rank_H && !order_WH && !h_connected;
  }
  friend bool operator==(const SystemMeta&, const SystemMeta&) = default;
};

/// The graph of H-orbits with typed raising edges.
///
/// Vertices are kept sorted by id and edges by (root, source, target, type),
/// so two systems built from the same data in a different input order compare
/// equal. Nothing structural is checked here: duplicate ids or dangling edges
/// are representable and reported by validate().
class OrbitSystem {
 public:
  OrbitSystem(WeylGroupSpec weyl, std::vector<OrbitVertex> vertices,
              std::vector<RaisingEdge> edges,
              std::optional<SystemMeta> meta = std::nullopt,
              std::vector<std::string> generator_names = {});

  const WeylGroupSpec& weyl() const noexcept { return weyl_; }
  const std::vector<OrbitVertex>& vertices() const noexcept {
    return vertices_;
  }
  const std::vector<RaisingEdge>& edges() const noexcept { return edges_; }
  const std::optional<SystemMeta>& meta() const noexcept { return meta_; }
  const std::vector<std::string>& generator_names() const noexcept {
    return generator_names_;
  }
  std::size_t generator_count() const noexcept { return weyl_.rank(); }

  /// Position of the (first) vertex with this id in vertices().
  std::optional<std::size_t> find(std::string_view id) const;
  const OrbitVertex& vertex(std::string_view id) const;

  friend bool operator==(const OrbitSystem& a, const OrbitSystem& b);

 private:
  WeylGroupSpec weyl_;
  std::vector<OrbitVertex> vertices_;
  std::vector<RaisingEdge> edges_;
  std::optional<SystemMeta> meta_;
  std::vector<std::string> generator_names_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class FiberShape { Saturated, U, T, N };

std::string_view to_string(FiberShape s) noexcept;

/// A connected component of the alpha-labelled subgraph.
struct AlphaFiber {
  GeneratorIndex root = 0;
  FiberShape shape = FiberShape::Saturated;
  std::vector<std::string> members;  // sorted by id
  std::string top;                   // open member; the sole member if saturated

  friend bool operator==(const AlphaFiber&, const AlphaFiber&) = default;
};

/// Validator rules.
///   R1 referential integrity, unique ids, sane values
///   R2 fiber shapes for every root
///   R3 rank along edges (U: equal, T and N: +1)
///   R4 unique sink reached from every vertex
///   R5 rho - rank constant, equal to rank_G - rank_H when known
///   R6 dim +1 along every edge
///   R7 equal rank on the two sources of a T-triple
enum class Rule { R1 = 1, R2, R3, R4, R5, R6, R7 };

std::string_view to_string(Rule r) noexcept;

struct Violation {
  Rule rule = Rule::R1;
  std::string vertex;  // primary witness, used for ordering
  std::string message;
  std::vector<std::string> witnesses;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct SkippedRule {
  Rule rule = Rule::R1;
  std::string reason;

  friend bool operator==(const SkippedRule&, const SkippedRule&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted by (rule, vertex)
  std::vector<SkippedRule> not_checked;

  bool ok() const noexcept { return violations.empty(); }
  bool violates(Rule r) const noexcept;
  std::size_t count(Rule r) const noexcept;

  friend bool operator==(const ValidationReport&,
                         const ValidationReport&) = default;
};

/// Thrown when an operation that needs a valid system is given an invalid
/// one. Carries the report that justified the refusal.
class InvalidSystemError : public Error {
 public:
  InvalidSystemError(const std::string& what, ValidationReport report)
      : Error(what), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// An alpha-component whose shape is not one of the four allowed ones.
class FiberShapeError : public Error {
 public:
  FiberShapeError(const std::string& what, GeneratorIndex root,
                  std::vector<std::string> vertices)
      : Error(what), root_(root), vertices_(std::move(vertices)) {}

  GeneratorIndex root() const noexcept { return root_; }
  const std::vector<std::string>& vertices() const noexcept {
    return vertices_;
  }

 private:
  GeneratorIndex root_;
  std::vector<std::string> vertices_;
};

/// alpha-fibers ordered by their smallest member id. Requires edge endpoints
/// to exist (DomainError otherwise); throws FiberShapeError on a malformed
/// component.
std::vector<AlphaFiber> fibers(const OrbitSystem& system, GeneratorIndex root);

ValidationReport validate(const OrbitSystem& system);

/// Throws InvalidSystemError carrying the report when validate() fails.
void require_valid(const OrbitSystem& system, std::string_view operation);

/// The unique vertex without outgoing edges. Throws InvalidSystemError when
/// there are zero or several.
std::string open_orbit(const OrbitSystem& system);

/// True iff the system has a unique sink and a raising path leads from `id`
/// to it. Unknown ids raise DomainError.
bool raising_reachable(const OrbitSystem& system, std::string_view id);

}  // namespace knop
