#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "knop/coxeter.hpp"
#include "knop/knop_action.hpp"
#include "knop/orbit_system.hpp"

namespace knop {

inline constexpr std::string_view kSchemaVersion = "1";

/// Reads a system document. Structural validation is not implied.
///
/// Errors: ParseError (malformed JSON, with line and column),
/// VersionError (schema_version other than "1"), SchemaError (anything else,
/// including duplicate vertex ids and unknown edge types).
OrbitSystem parse_system(std::string_view document,
                         std::size_t element_bound = kDefaultElementBound);

/// Reads only the "cartan" field of a document; any other fields are
/// ignored, so both a bare {"cartan": ...} file and a full system document
/// work.
CartanMatrix parse_cartan(std::string_view document);

/// Canonical system document: fixed key order, vertices sorted by id, edges
/// by (root, source), two-space indentation and a trailing newline. Equal
/// systems serialize to identical bytes.
std::string serialize(const OrbitSystem& system);

std::string serialize(const ValidationReport& report);

/// Generator permutations as arrays of vertex ids: entry k of a permutation
/// is the image of vertex_order[k], and vertex_order is lexicographic by id.
std::string serialize(const ActionTable& table, const FactoringResult& factoring);

/// W-orbit partition with per-vertex stabilizer orders.
std::string serialize_orbits(const WeylAction& action);

std::string serialize(const OrbitReport& report);

/// Graphviz text. One node per vertex (id, rank, type label), one arrow per
/// raising edge labelled "<root>:<type>"; N edges are drawn as double lines.
/// With a report, each W-orbit becomes a filled, coloured cluster.
std::string export_dot(const OrbitSystem& system,
                       const OrbitReport* annotations = nullptr);

}  // namespace knop
