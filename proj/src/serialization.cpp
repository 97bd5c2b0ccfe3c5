#include "knop/serialization.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace knop {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

ParseError located_parse_error(std::string_view document,
                               const json::parse_error& e) {
  // byte is 1-based and points one past the offending character
  std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
  offset = std::min(offset, document.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset; ++k) {
    if (document[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError("JSON syntax error at line " + std::to_string(line) +
                        ", column " + std::to_string(column) + ": " + e.what(),
                    line, column);
}

json read_json(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw located_parse_error(document, e);
  }
}

void reject_unknown_keys(const json& object, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    const bool known = std::find(allowed.begin(), allowed.end(), key) !=
                       allowed.end();
    if (!known) {
      throw SchemaError(std::string(where) + ": unknown field \"" + key + "\"");
    }
  }
}

const json& require(const json& object, const char* key,
                    const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw SchemaError(where + ": missing field \"" + key + "\"");
  }
  return *it;
}

int read_int(const json& value, const std::string& where, int min_value) {
  if (!value.is_number_integer()) {
    throw SchemaError(where + ": expected an integer");
  }
  const auto v = value.get<long long>();
  if (v < min_value || v > 1'000'000'000) {
    throw SchemaError(where + ": integer out of range");
  }
  return static_cast<int>(v);
}

std::string read_string(const json& value, const std::string& where) {
  if (!value.is_string()) throw SchemaError(where + ": expected a string");
  return value.get<std::string>();
}

CartanMatrix read_cartan(const json& value) {
  if (!value.is_array() || value.empty()) {
    throw SchemaError("cartan: expected a non-empty array of rows");
  }
  std::vector<std::vector<int>> rows;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto& row = value[i];
    const std::string where = "cartan[" + std::to_string(i) + "]";
    if (!row.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<int> r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      r.push_back(read_int(row[j], where + "[" + std::to_string(j) + "]",
                           -1'000'000));
    }
    rows.push_back(std::move(r));
  }
  try {
    return CartanMatrix(std::move(rows));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("cartan: ") + e.what());
  }
}

const json& require_object(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document: expected a JSON object");
  return doc;
}

void check_version(const json& doc) {
  auto it = doc.find("schema_version");
  if (it == doc.end()) {
    throw SchemaError("document: missing field \"schema_version\"");
  }
  if (!it->is_string()) {
    throw SchemaError("schema_version: expected a string");
  }
  if (it->get<std::string>() != kSchemaVersion) {
    throw VersionError("unsupported schema_version \"" +
                       it->get<std::string>() + "\" (supported: \"" +
                       std::string(kSchemaVersion) + "\")");
  }
}

OrbitVertex read_vertex(const json& value, std::size_t index) {
  const std::string where = "vertices[" + std::to_string(index) + "]";
  if (!value.is_object()) throw SchemaError(where + ": expected an object");
  reject_unknown_keys(value, where, {"id", "rank", "dim", "rho", "type_label"});
  OrbitVertex v;
  v.id = read_string(require(value, "id", where), where + ".id");
  if (v.id.empty()) throw SchemaError(where + ".id: must not be empty");
  v.rank = read_int(require(value, "rank", where), where + ".rank", 0);
  if (auto it = value.find("dim"); it != value.end()) {
    v.dim = read_int(*it, where + ".dim", 0);
  }
  if (auto it = value.find("rho"); it != value.end()) {
    v.rho = read_int(*it, where + ".rho", 0);
  }
  if (auto it = value.find("type_label"); it != value.end()) {
    v.type_label = read_string(*it, where + ".type_label");
  }
  return v;
}

RaisingEdge read_edge(const json& value, std::size_t index) {
  std::string where = "edges[" + std::to_string(index) + "]";
  if (!value.is_object()) throw SchemaError(where + ": expected an object");
  reject_unknown_keys(value, where, {"source", "target", "root", "etype"});
  RaisingEdge e;
  e.source = read_string(require(value, "source", where), where + ".source");
  e.target = read_string(require(value, "target", where), where + ".target");
  where += " (" + e.source + " -> " + e.target + ")";
  e.root = static_cast<GeneratorIndex>(
      read_int(require(value, "root", where), where + ".root", 0));
  const auto etype =
      read_string(require(value, "etype", where), where + ".etype");
  auto parsed = edge_type_from_string(etype);
  if (!parsed) {
    throw SchemaError(where + ": unknown etype \"" + etype +
                      "\" (expected U, T or N)");
  }
  e.etype = *parsed;
  return e;
}

SystemMeta read_meta(const json& value) {
  if (!value.is_object()) throw SchemaError("meta: expected an object");
  reject_unknown_keys(value, "meta",
                      {"rank_G", "rank_H", "order_WH", "h_connected"});
  SystemMeta meta;
  if (auto it = value.find("rank_G"); it != value.end()) {
    meta.rank_G = read_int(*it, "meta.rank_G", 0);
  }
  if (auto it = value.find("rank_H"); it != value.end()) {
    meta.rank_H = read_int(*it, "meta.rank_H", 0);
  }
  if (auto it = value.find("order_WH"); it != value.end()) {
    meta.order_WH = static_cast<std::uint64_t>(read_int(*it, "meta.order_WH", 1));
  }
  if (auto it = value.find("h_connected"); it != value.end()) {
    if (!it->is_boolean()) throw SchemaError("meta.h_connected: expected a boolean");
    meta.h_connected = it->get<bool>();
  }
  return meta;
}

std::string dump(const ordered& doc) { return doc.dump(2) + "\n"; }

ordered header(std::string_view kind) {
  ordered doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

ordered witness_json(const std::optional<FactoringWitness>& w) {
  if (!w) return nullptr;
  ordered out;
  out["i"] = w->i;
  out["j"] = w->j;
  out["vertex"] = w->vertex;
  return out;
}

ordered factoring_json(bool ok, const std::optional<FactoringWitness>& w) {
  ordered out;
  out["ok"] = ok;
  out["witness"] = witness_json(w);
  return out;
}

ordered partition_json(const WOrbitPartition& p) {
  ordered out = ordered::array();
  for (const auto& block : p.blocks) out.push_back(block);
  return out;
}

std::string root_label(const OrbitSystem& system, GeneratorIndex root) {
  if (root < system.generator_names().size()) {
    return system.generator_names()[root];
  }
  return std::to_string(root);
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

OrbitSystem parse_system(std::string_view document, std::size_t element_bound) {
  const json doc = read_json(document);
  require_object(doc);
  check_version(doc);
  if (auto kind = doc.find("kind"); kind != doc.end()) {
    throw SchemaError("document: a " + kind->dump() +
                      " document is not an orbit system");
  }
  reject_unknown_keys(doc, "document",
                      {"schema_version", "cartan", "generators", "vertices",
                       "edges", "meta"});
  auto cartan = read_cartan(require(doc, "cartan", "document"));
  std::optional<WeylGroupSpec> weyl;
  try {
    weyl.emplace(std::move(cartan), element_bound);
  } catch (const DomainError& e) {
    throw SchemaError(std::string("cartan: ") + e.what());
  }

  std::vector<std::string> names;
  if (auto it = doc.find("generators"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("generators: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      names.push_back(
          read_string((*it)[k], "generators[" + std::to_string(k) + "]"));
    }
    if (names.size() != weyl->rank()) {
      throw SchemaError("generators: expected " + std::to_string(weyl->rank()) +
                        " names, found " + std::to_string(names.size()));
    }
  }

  const auto& vertex_list = require(doc, "vertices", "document");
  if (!vertex_list.is_array()) throw SchemaError("vertices: expected an array");
  std::vector<OrbitVertex> vertices;
  std::set<std::string> ids;
  for (std::size_t k = 0; k < vertex_list.size(); ++k) {
    auto v = read_vertex(vertex_list[k], k);
    if (!ids.insert(v.id).second) {
      throw SchemaError("vertices[" + std::to_string(k) +
                        "]: duplicate vertex id \"" + v.id + "\"");
    }
    vertices.push_back(std::move(v));
  }

  const auto& edge_list = require(doc, "edges", "document");
  if (!edge_list.is_array()) throw SchemaError("edges: expected an array");
  std::vector<RaisingEdge> edges;
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    edges.push_back(read_edge(edge_list[k], k));
  }

  std::optional<SystemMeta> meta;
  if (auto it = doc.find("meta"); it != doc.end()) meta = read_meta(*it);

  return OrbitSystem(std::move(*weyl), std::move(vertices), std::move(edges),
                     std::move(meta), std::move(names));
}

CartanMatrix parse_cartan(std::string_view document) {
  const json doc = read_json(document);
  require_object(doc);
  return read_cartan(require(doc, "cartan", "document"));
}

std::string serialize(const OrbitSystem& system) {
  ordered doc;
  doc["schema_version"] = kSchemaVersion;
  doc["cartan"] = system.weyl().cartan().rows();
  if (!system.generator_names().empty()) {
    doc["generators"] = system.generator_names();
  }
  ordered vertices = ordered::array();
  for (const auto& v : system.vertices()) {
    ordered item;
    item["id"] = v.id;
    item["rank"] = v.rank;
    if (v.dim) item["dim"] = *v.dim;
    if (v.rho) item["rho"] = *v.rho;
    if (v.type_label) item["type_label"] = *v.type_label;
    vertices.push_back(std::move(item));
  }
  doc["vertices"] = std::move(vertices);
  ordered edges = ordered::array();
  for (const auto& e : system.edges()) {
    ordered item;
    item["source"] = e.source;
    item["target"] = e.target;
    item["root"] = e.root;
    item["etype"] = std::string(to_string(e.etype));
    edges.push_back(std::move(item));
  }
  doc["edges"] = std::move(edges);
  if (const auto& meta = system.meta()) {
    ordered m = ordered::object();
    if (meta->rank_G) m["rank_G"] = *meta->rank_G;
    if (meta->rank_H) m["rank_H"] = *meta->rank_H;
    if (meta->order_WH) m["order_WH"] = *meta->order_WH;
    if (meta->h_connected) m["h_connected"] = *meta->h_connected;
    doc["meta"] = std::move(m);
  }
  return dump(doc);
}

std::string serialize(const ValidationReport& report) {
  auto doc = header("validation_report");
  doc["ok"] = report.ok();
  ordered violations = ordered::array();
  for (const auto& v : report.violations) {
    ordered item;
    item["rule"] = std::string(to_string(v.rule));
    item["vertex"] = v.vertex;
    item["message"] = v.message;
    item["witnesses"] = v.witnesses;
    violations.push_back(std::move(item));
  }
  doc["violations"] = std::move(violations);
  ordered skipped = ordered::array();
  for (const auto& s : report.not_checked) {
    ordered item;
    item["rule"] = std::string(to_string(s.rule));
    item["reason"] = s.reason;
    skipped.push_back(std::move(item));
  }
  doc["not_checked"] = std::move(skipped);
  return dump(doc);
}

std::string serialize(const ActionTable& table,
                      const FactoringResult& factoring) {
  const auto& system = table.system();
  auto doc = header("action");
  ordered order = ordered::array();
  for (const auto& v : system.vertices()) order.push_back(v.id);
  doc["vertex_order"] = std::move(order);
  ordered generators = ordered::array();
  for (GeneratorIndex i = 0; i < table.generator_count(); ++i) {
    ordered item;
    item["root"] = i;
    if (i < system.generator_names().size()) {
      item["name"] = system.generator_names()[i];
    }
    ordered images = ordered::array();
    for (auto target : table.perm(i)) images.push_back(system.vertices()[target].id);
    item["permutation"] = std::move(images);
    generators.push_back(std::move(item));
  }
  doc["generators"] = std::move(generators);
  doc["factoring"] = factoring_json(factoring.ok, factoring.witness);
  return dump(doc);
}

std::string serialize_orbits(const WeylAction& action) {
  auto doc = header("orbits");
  doc["group_order"] = action.group_order();
  doc["partition"] = partition_json(action.partition());
  ordered stabilizers = ordered::object();
  const auto& vertices = action.system().vertices();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    stabilizers[vertices[v].id] = action.stabilizer_order(v);
  }
  doc["stabilizer_orders"] = std::move(stabilizers);
  return dump(doc);
}

std::string serialize(const OrbitReport& report) {
  auto doc = header("orbit_report");
  doc["group_order"] = report.group_order;
  doc["factoring"] = factoring_json(report.factoring_ok, report.factoring_witness);
  doc["partition"] = partition_json(report.partition);
  ordered stabilizers = ordered::object();
  for (const auto& [id, order] : report.stabilizer_order) stabilizers[id] = order;
  doc["stabilizer_orders"] = std::move(stabilizers);
  ordered verdicts = ordered::object();
  for (const auto& [name, verdict] : report.theorem_verdicts) {
    verdicts[name] = std::string(to_string(verdict));
  }
  doc["theorem_verdicts"] = std::move(verdicts);

  ordered type;
  type["verdict"] = std::string(to_string(report.type_theorem.verdict));
  if (const auto& w = report.type_theorem.witness) {
    ordered item;
    item["kind"] = std::string(to_string(w->kind));
    item["first"] = w->first;
    item["second"] = w->second;
    type["witness"] = std::move(item);
  } else {
    type["witness"] = nullptr;
  }
  type["note"] = report.type_theorem.note;
  doc["type_theorem"] = std::move(type);

  const auto& m = report.minimal_rank;
  ordered minimal;
  auto verdict = report.theorem_verdicts.find("minimal_rank");
  minimal["verdict"] = std::string(to_string(
      verdict == report.theorem_verdicts.end() ? Verdict::NotChecked
                                               : verdict->second));
  minimal["minimal_rank"] = m.minimal_rank;
  minimal["count"] = m.count;
  minimal["vertices"] = m.vertices;
  minimal["stabilizer_orders"] = m.stabilizer_orders;
  minimal["expected"] = m.expected ? ordered(*m.expected) : ordered(nullptr);
  minimal["pass"] = m.pass ? ordered(*m.pass) : ordered(nullptr);
  minimal["note"] = m.note;
  doc["minimal_rank"] = std::move(minimal);
  return dump(doc);
}

std::string export_dot(const OrbitSystem& system,
                       const OrbitReport* annotations) {
  static constexpr std::string_view palette[] = {
      "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
      "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  constexpr std::size_t palette_size = std::size(palette);

  std::ostringstream os;
  os << "digraph Gamma {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";

  auto node_line = [&](const OrbitVertex& v, std::string_view fill) {
    std::string label = v.id + "\\nrk " + std::to_string(v.rank);
    if (v.type_label) label += "\\n" + *v.type_label;
    std::string escaped;
    for (char c : label) {
      if (c == '"') escaped += '\\';
      escaped += c;
    }
    os << "  " << dot_quote(v.id) << " [label=\"" << escaped << "\"";
    if (!fill.empty()) os << ", style=filled, fillcolor=\"" << fill << "\"";
    os << "];\n";
  };

  if (annotations && !annotations->partition.blocks.empty()) {
    const auto& blocks = annotations->partition.blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto fill = palette[b % palette_size];
      os << "  subgraph cluster_" << b << " {\n";
      os << "    label=\"W-orbit " << b << "\";\n";
      os << "    style=rounded;\n";
      os << "    color=\"" << fill << "\";\n";
      for (const auto& id : blocks[b]) {
        os << "  ";
        if (auto k = system.find(id)) node_line(system.vertices()[*k], fill);
      }
      os << "  }\n";
    }
  } else {
    for (const auto& v : system.vertices()) node_line(v, "");
  }

  for (const auto& e : system.edges()) {
    os << "  " << dot_quote(e.source) << " -> " << dot_quote(e.target)
       << " [label=\"" << root_label(system, e.root) << ":" << to_string(e.etype)
       << "\"";
    if (e.etype == EdgeType::N) os << ", color=\"black:invis:black\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace knop
