// Copyright 2026 The qkvdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "brute_force.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace qkvdp::testing {
namespace {

bool clash(const FlowArc& a, const FlowArc& b) {
  if (a.copy != b.copy)
    return a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head;
  return a.tail == b.tail || a.head == b.head;
}

bool flow_ok(const FlowModel& m, const std::vector<int>& x) {
  std::map<std::pair<int, int>, long> net;
  for (int r = 0; r < m.num_rows(); ++r)
    net[{m.vertices[r].copy, m.vertices[r].vertex}] -= std::lround(m.supply(r));
  for (int e = 0; e < m.num_arcs(); ++e) {
    if (!x[e]) continue;
    net[{m.arcs[e].copy, m.arcs[e].tail}] += 1;
    net[{m.arcs[e].copy, m.arcs[e].head}] -= 1;
  }
  for (const auto& [key, v] : net)
    if (v != 0) return false;
  return true;
}

bool has_cycle(const FlowModel& m, const std::vector<int>& x) {
  // With disjointness every vertex has in/out degree <= 1 per copy, so the
  // support is a union of paths and cycles; a cycle has no vertex of
  // in-degree 0.
  std::map<std::pair<int, int>, int> indeg, outdeg;
  std::set<std::pair<int, int>> verts;
  for (int e = 0; e < m.num_arcs(); ++e) {
    if (!x[e]) continue;
    const auto t = std::make_pair(m.arcs[e].copy, m.arcs[e].tail);
    const auto h = std::make_pair(m.arcs[e].copy, m.arcs[e].head);
    ++outdeg[t];
    ++indeg[h];
    verts.insert(t);
    verts.insert(h);
  }
  // Peel vertices with in-degree 0 (Kahn); leftovers lie on cycles.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> succ;
  for (int e = 0; e < m.num_arcs(); ++e)
    if (x[e]) succ[{m.arcs[e].copy, m.arcs[e].tail}].push_back({m.arcs[e].copy, m.arcs[e].head});
  std::vector<std::pair<int, int>> stack;
  for (const auto& v : verts)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t removed = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++removed;
    for (const auto& w : succ[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return removed != verts.size();
}

}  // namespace

bool raw_feasible(const FlowModel& m, const std::vector<int>& x, bool acyclic) {
  if (static_cast<int>(x.size()) != m.num_arcs()) return false;
  for (int v : x)
    if (v != 0 && v != 1) return false;
  for (int a = 0; a < m.num_arcs(); ++a)
    for (int b = a + 1; b < m.num_arcs(); ++b)
      if (x[a] && x[b] && clash(m.arcs[a], m.arcs[b])) return false;
  if (!flow_ok(m, x)) return false;
  return !acyclic || !has_cycle(m, x);
}

std::optional<BruteForce> brute_force_min(const FlowModel& m, bool acyclic,
                                          const NodeFixings* fixings) {
  const int n = m.num_arcs();
  BruteForce best;
  bool found = false;
  std::vector<int> x(n, 0);
  std::vector<int> chosen;

  auto visit = [&](auto&& self, int e) -> void {
    if (e == n) {
      if (!flow_ok(m, x)) return;
      if (acyclic && has_cycle(m, x)) return;
      ++best.feasible_count;
      best.solutions.push_back(x);
      const double v = m.objective(std::span<const int>(x));
      if (!found || v < best.value) {
        found = true;
        best.value = v;
        best.x = x;
      }
      return;
    }
    const int f = fixings ? fixings->value[e] : -1;
    if (f != 1) self(self, e + 1);
    if (f != 0) {
      for (int c : chosen)
        if (clash(m.arcs[c], m.arcs[e])) return;
      x[e] = 1;
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
      x[e] = 0;
    }
  };
  visit(visit, 0);
  if (!found) return std::nullopt;
  return best;
}

}  // namespace qkvdp::testing
