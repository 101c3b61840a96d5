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

#include "vdp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qkvdp {
namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

class Router {
 public:
  explicit Router(const VdpQuery& q)
      : g_(*q.graph),
        pairs_(q.pairs),
        removed_(g_.num_arcs(), 0),
        owner_(g_.num_vertices(), -1),
        reserved_(g_.num_vertices(), -1),
        routed_(q.pairs.size(), 0),
        paths_(q.pairs.size()),
        queue_(g_.num_vertices()),
        dist_(g_.num_vertices()) {
    for (ArcId e : q.removed_arcs) {
      if (e < 0 || e >= g_.num_arcs()) throw InvalidInput("removed arc does not exist");
      removed_[e] = 1;
    }
  }

  bool run() {
    for (int j = 0; j < static_cast<int>(pairs_.size()); ++j) {
      const auto [s, t] = pairs_[j];
      if (s < 0 || s >= g_.num_vertices() || t < 0 || t >= g_.num_vertices())
        throw InvalidInput("query pair references a nonexistent vertex");
      for (VertexId v : {s, t}) {
        if (reserved_[v] != -1 && reserved_[v] != j) return false;  // shared terminal
        reserved_[v] = j;
      }
    }
    return route_remaining(static_cast<int>(pairs_.size()));
  }

  std::vector<Path> take_paths() { return std::move(paths_); }

 private:
  bool usable(VertexId v, int j) const {
    return owner_[v] == -1 && (reserved_[v] == -1 || reserved_[v] == j);
  }

  // BFS length from `from` to the target of pair j through usable vertices.
  int residual_distance(int j, VertexId from) {
    const VertexId target = pairs_[j].target;
    if (from == target) return 0;
    std::fill(dist_.begin(), dist_.end(), -1);
    int head = 0, tail = 0;
    queue_[tail++] = from;
    dist_[from] = 0;
    while (head < tail) {
      const VertexId u = queue_[head++];
      for (ArcId e : g_.out_arcs(u)) {
        if (removed_[e]) continue;
        const VertexId w = g_.arc(e).head;
        if (dist_[w] != -1 || !usable(w, j)) continue;
        dist_[w] = dist_[u] + 1;
        if (w == target) return dist_[w];
        queue_[tail++] = w;
      }
    }
    return kUnreachable;
  }

  bool unrouted_reachable(int skip) {
    for (int j = 0; j < static_cast<int>(pairs_.size()); ++j) {
      if (routed_[j] || j == skip) continue;
      if (residual_distance(j, pairs_[j].source) == kUnreachable) return false;
    }
    return true;
  }

  bool route_remaining(int remaining) {
    if (remaining == 0) return true;
    int best = -1;
    int best_dist = kUnreachable;
    for (int j = 0; j < static_cast<int>(pairs_.size()); ++j) {
      if (routed_[j]) continue;
      const int d = residual_distance(j, pairs_[j].source);
      if (d == kUnreachable) return false;
      if (d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    const VertexId s = pairs_[best].source;
    owner_[s] = best;
    paths_[best] = {s};
    bool ok;
    if (s == pairs_[best].target) {
      routed_[best] = 1;
      ok = route_remaining(remaining - 1);
      if (!ok) routed_[best] = 0;
    } else {
      ok = extend(best, s, remaining);
    }
    if (!ok) {
      owner_[s] = -1;
      paths_[best].clear();
    }
    return ok;
  }

  bool extend(int j, VertexId at, int remaining) {
    const VertexId target = pairs_[j].target;
    for (ArcId e : g_.out_arcs(at)) {
      if (removed_[e]) continue;
      const VertexId h = g_.arc(e).head;
      if (!usable(h, j)) continue;
      owner_[h] = j;
      paths_[j].push_back(h);
      if (h == target) {
        routed_[j] = 1;
        if (unrouted_reachable(-1) && route_remaining(remaining - 1)) return true;
        routed_[j] = 0;
      } else if (residual_distance(j, h) != kUnreachable && unrouted_reachable(j)) {
        if (extend(j, h, remaining)) return true;
      }
      paths_[j].pop_back();
      owner_[h] = -1;
    }
    return false;
  }

  const DirectedGraph& g_;
  std::vector<TerminalPair> pairs_;
  std::vector<char> removed_;
  std::vector<int> owner_;
  std::vector<int> reserved_;
  std::vector<char> routed_;
  std::vector<Path> paths_;
  std::vector<VertexId> queue_;
  std::vector<int> dist_;
};

// All simple s-t paths of `g` as arc-id sequences.
void simple_paths(const DirectedGraph& g, VertexId at, VertexId target, std::vector<char>& on_path,
                  std::vector<ArcId>& current, std::vector<std::vector<ArcId>>& out) {
  if (at == target) {
    out.push_back(current);
    return;
  }
  for (ArcId e : g.out_arcs(at)) {
    const VertexId h = g.arc(e).head;
    if (on_path[h]) continue;
    on_path[h] = 1;
    current.push_back(e);
    simple_paths(g, h, target, on_path, current, out);
    current.pop_back();
    on_path[h] = 0;
  }
}

}  // namespace

VdpResult feasible_vdp(const VdpQuery& query) {
  if (query.graph == nullptr) throw InvalidInput("query has no graph");
  Router router(query);
  VdpResult result;
  result.feasible = router.run();
  if (result.feasible) result.witness = router.take_paths();
  return result;
}

std::vector<std::vector<int>> enumerate_bqp_feasible(const UnionModel& model, int max_arcs) {
  if (model.num_arcs() > max_arcs)
    throw InvalidInput("union has " + std::to_string(model.num_arcs()) +
                       " arcs, above the enumeration guard of " + std::to_string(max_arcs));
  // Rebuild the base graph from copy 0 of the union.
  std::vector<Arc> base_arcs;
  for (ArcId a = 0; a < model.base_arcs; ++a) {
    const Arc& ua = model.graph.arc(a);
    base_arcs.push_back({model.base_vertex_of(ua.tail), model.base_vertex_of(ua.head)});
  }
  const DirectedGraph base(model.base_vertices, base_arcs);

  std::vector<std::vector<std::vector<ArcId>>> per_copy(model.k);
  for (int i = 0; i < model.k; ++i) {
    std::vector<char> on_path(base.num_vertices(), 0);
    std::vector<ArcId> current;
    on_path[model.pairs[i].source] = 1;
    simple_paths(base, model.pairs[i].source, model.pairs[i].target, on_path, current, per_copy[i]);
  }

  std::vector<std::vector<int>> solutions;
  std::vector<int> x(model.num_arcs(), 0);
  std::vector<char> used(model.base_vertices, 0);
  // Depth-first product over copies with vertex-disjointness.
  auto combine = [&](auto&& self, int copy) -> void {
    if (copy == model.k) {
      solutions.push_back(x);
      return;
    }
    const VertexId s = model.pairs[copy].source;
    for (const auto& path : per_copy[copy]) {
      std::vector<VertexId> verts{s};
      for (ArcId a : path) verts.push_back(base.arc(a).head);
      if (std::any_of(verts.begin(), verts.end(), [&](VertexId v) { return used[v]; })) continue;
      for (VertexId v : verts) used[v] = 1;
      for (ArcId a : path) x[model.union_arc(copy, a)] = 1;
      self(self, copy + 1);
      for (ArcId a : path) x[model.union_arc(copy, a)] = 0;
      for (VertexId v : verts) used[v] = 0;
    }
  };
  combine(combine, 0);
  return solutions;
}

std::vector<std::vector<int>> enumerate_flow_solutions(const FlowModel& model, bool acyclic_only,
                                                       int max_arcs) {
  const int n = model.num_arcs();
  if (n > max_arcs)
    throw InvalidInput("model has " + std::to_string(n) + " arcs, above the enumeration guard of " +
                       std::to_string(max_arcs));
  const int rows = model.num_rows();
  std::vector<int> out_count(rows, 0), in_count(rows, 0);
  std::vector<int> open_out(rows, 0), open_in(rows, 0);
  for (ArcId e = 0; e < n; ++e) {
    ++open_out[model.tail_row[e]];
    ++open_in[model.head_row[e]];
  }
  for (int r = 0; r < rows; ++r) {
    if (open_out[r] == 0 && open_in[r] == 0 && std::abs(model.supply(r)) > 0.5) return {};
  }
  auto row_possible = [&](int r) {
    const int need = static_cast<int>(std::lround(model.supply(r))) - (out_count[r] - in_count[r]);
    return need >= -open_in[r] && need <= open_out[r];
  };

  std::vector<std::vector<int>> solutions;
  std::vector<int> x(n, 0);
  auto dfs = [&](auto&& self, ArcId e) -> void {
    if (e == n) {
      if (acyclic_only && !check_solution(model, x).acyclic_ok) return;
      solutions.push_back(x);
      return;
    }
    const int t = model.tail_row[e];
    const int h = model.head_row[e];
    --open_out[t];
    --open_in[h];
    // x_e = 0
    if (row_possible(t) && row_possible(h)) self(self, e + 1);
    // x_e = 1
    bool clash = false;
    for (ArcId q : model.conflicts.neighbors(e)) {
      if (q < e && x[q]) {
        clash = true;
        break;
      }
    }
    if (!clash) {
      x[e] = 1;
      ++out_count[t];
      ++in_count[h];
      if (row_possible(t) && row_possible(h)) self(self, e + 1);
      --out_count[t];
      --in_count[h];
      x[e] = 0;
    }
    ++open_out[t];
    ++open_in[h];
  };
  dfs(dfs, 0);
  return solutions;
}

}  // namespace qkvdp
