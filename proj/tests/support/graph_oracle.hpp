// Orbit and reachability data read straight off the edge list, without the
// action code under test. s_alpha swaps the ends of every U edge and the two
// sources of every T pair, and moves nothing else, so the W-orbits are the
// components of the graph with those links.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "knop/orbit_system.hpp"

namespace graph_oracle {

inline std::vector<std::vector<std::string>> orbits(const knop::OrbitSystem& s) {
  std::map<std::string, std::string> parent;
  for (const auto& v : s.vertices()) parent[v.id] = v.id;
  auto find = [&](std::string x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](const std::string& a, const std::string& b) {
    auto ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  std::map<std::pair<std::size_t, std::string>, std::vector<std::string>> t_sources;
  for (const auto& e : s.edges()) {
    if (e.etype == knop::EdgeType::U) join(e.source, e.target);
    if (e.etype == knop::EdgeType::T) t_sources[{e.root, e.target}].push_back(e.source);
  }
  for (const auto& [key, sources] : t_sources) {
    for (std::size_t k = 1; k < sources.size(); ++k) join(sources[0], sources[k]);
  }
  std::map<std::string, std::vector<std::string>> blocks;
  for (const auto& v : s.vertices()) blocks[find(v.id)].push_back(v.id);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, ids] : blocks) {
    std::sort(ids.begin(), ids.end());
    out.push_back(ids);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sinks(const knop::OrbitSystem& s) {
  std::set<std::string> has_out;
  for (const auto& e : s.edges()) has_out.insert(e.source);
  std::vector<std::string> out;
  for (const auto& v : s.vertices()) {
    if (!has_out.count(v.id)) out.push_back(v.id);
  }
  return out;
}

// Vertices with a raising path to `target`, by backwards search.
inline std::set<std::string> reaching(const knop::OrbitSystem& s,
                                      const std::string& target) {
  std::set<std::string> seen{target};
  std::vector<std::string> stack{target};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& e : s.edges()) {
      if (e.target == x && seen.insert(e.source).second) stack.push_back(e.source);
    }
  }
  return seen;
}

}  // namespace graph_oracle
