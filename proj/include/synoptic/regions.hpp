#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "synoptic/ast.hpp"
#include "synoptic/diag.hpp"

namespace synoptic {

// Equivalence classes of states under immediate-transition connectivity.
// Each region's immediate subgraph must be acyclic; `order` lists every
// region's states in a topological order consistent with it.
struct RegionPartition {
  std::map<std::string, int> region_of;
  std::vector<std::vector<std::string>> order;
};

inline RegionPartition compute_regions(const ast::AutomatonDecl& a) {
  const std::size_t n = a.states.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[a.states[i].name] = i;

  // Union-find over immediate transitions.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : a.transitions) {
    if (t.delayed) continue;
    std::size_t x = find(index.at(t.from)), y = find(index.at(t.to));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }

  // Region ids ordered by the smallest member's declaration index.
  std::map<std::size_t, int> root_to_region;
  RegionPartition part;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    if (!root_to_region.count(root)) {
      root_to_region[root] = static_cast<int>(part.order.size());
      part.order.emplace_back();
    }
    part.region_of[a.states[i].name] = root_to_region[root];
  }

  // Kahn's algorithm per region, breaking ties by declaration order.
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& t : a.transitions) {
    if (t.delayed) continue;
    succ[index.at(t.from)].push_back(index.at(t.to));
    ++indegree[index.at(t.to)];
  }
  std::vector<bool> placed(n, false);
  for (std::size_t placed_count = 0; placed_count < n;) {
    bool progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || indegree[i] != 0) continue;
      placed[i] = true;
      ++placed_count;
      progress = true;
      part.order[static_cast<std::size_t>(part.region_of[a.states[i].name])].push_back(
          a.states[i].name);
      for (std::size_t s : succ[i]) --indegree[s];
    }
    if (!progress) {
      std::ostringstream os;
      os << "immediate transitions of automaton '" << a.name << "' form a cycle through states:";
      for (std::size_t i = 0; i < n; ++i)
        if (!placed[i]) os << " " << a.states[i].name;
      throw TranslateError("CyclicRegion", os.str(), a.span);
    }
  }
  return part;
}

}  // namespace synoptic
