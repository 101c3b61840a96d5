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

#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qkvdp {

DirectedGraph::DirectedGraph(int num_vertices, std::vector<Arc> arcs)
    : num_vertices_(num_vertices), arcs_(std::move(arcs)) {
  if (num_vertices_ < 1) throw InvalidInput("graph needs at least one vertex");
  out_.assign(num_vertices_, {});
  in_.assign(num_vertices_, {});
  std::set<std::pair<VertexId, VertexId>> seen;
  for (ArcId e = 0; e < num_arcs(); ++e) {
    const Arc& a = arcs_[e];
    if (a.tail < 0 || a.tail >= num_vertices_ || a.head < 0 || a.head >= num_vertices_)
      throw InvalidInput("arc " + std::to_string(e) + " references a nonexistent vertex");
    if (a.tail == a.head) throw InvalidInput("arc " + std::to_string(e) + " is a self-loop");
    if (!seen.emplace(a.tail, a.head).second)
      throw InvalidInput("parallel arc (" + std::to_string(a.tail) + ", " +
                         std::to_string(a.head) + ")");
    out_[a.tail].push_back(e);
    in_[a.head].push_back(e);
  }
}

ArcId DirectedGraph::find_arc(VertexId tail, VertexId head) const {
  if (tail < 0 || tail >= num_vertices_) return -1;
  for (ArcId e : out_[tail])
    if (arcs_[e].head == head) return e;
  return -1;
}

void Instance::validate() const {
  const int n_vertices = graph.num_vertices();
  if (pairs.empty()) throw InvalidInput("instance needs at least one terminal pair (k = 0)");
  std::set<VertexId> sources, targets;
  for (const auto& [s, t] : pairs) {
    if (s < 0 || s >= n_vertices || t < 0 || t >= n_vertices)
      throw InvalidInput("terminal pair references a nonexistent vertex");
    if (s == t) throw InvalidInput("source equals target in a terminal pair");
    if (!sources.insert(s).second) throw InvalidInput("sources are not pairwise distinct");
    if (!targets.insert(t).second) throw InvalidInput("targets are not pairwise distinct");
  }
  const int n = num_union_arcs();
  if (cost.rows() != n || cost.cols() != n)
    throw InvalidInput("cost matrix is " + std::to_string(cost.rows()) + "x" +
                       std::to_string(cost.cols()) + ", expected " + std::to_string(n) + "x" +
                       std::to_string(n));
  if (!cost.allFinite()) throw InvalidInput("cost matrix has non-finite entries");
  if (n > 0 && (cost - cost.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("cost matrix is not symmetric");
}

double symmetrize(Eigen::MatrixXd& cost) {
  if (cost.size() == 0) return 0.0;
  const double asym = (cost - cost.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd sym = 0.5 * (cost + cost.transpose());
  cost = sym;
  return asym;
}

ConflictSet::ConflictSet(int num_arcs, std::vector<std::pair<ArcId, ArcId>> pairs)
    : neighbors_(num_arcs) {
  for (auto& [p, q] : pairs) {
    if (p == q) throw InvalidInput("conflict set must be irreflexive");
    if (p > q) std::swap(p, q);
    if (p < 0 || q >= num_arcs) throw InvalidInput("conflict references a nonexistent arc");
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs_ = std::move(pairs);
  for (const auto& [p, q] : pairs_) {
    neighbors_[p].push_back(q);
    neighbors_[q].push_back(p);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

bool ConflictSet::contains(ArcId p, ArcId q) const {
  if (p < 0 || p >= static_cast<int>(neighbors_.size())) return false;
  return std::binary_search(neighbors_[p].begin(), neighbors_[p].end(), q);
}

Eigen::MatrixXd UnionModel::incidence() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_vertices(), num_arcs());
  for (ArcId e = 0; e < num_arcs(); ++e) {
    a(graph.arc(e).tail, e) = 1.0;
    a(graph.arc(e).head, e) = -1.0;
  }
  return a;
}

UnionModel disjoint_union(const Instance& instance) {
  instance.validate();
  const DirectedGraph& base = instance.graph;
  UnionModel u;
  u.k = instance.k();
  u.base_vertices = base.num_vertices();
  u.base_arcs = base.num_arcs();
  u.pairs = instance.pairs;

  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(u.k) * u.base_arcs);
  for (int i = 0; i < u.k; ++i)
    for (const Arc& a : base.arcs())
      arcs.push_back({u.union_vertex(i, a.tail), u.union_vertex(i, a.head)});
  u.graph = DirectedGraph(u.k * u.base_vertices, std::move(arcs));

  u.supply = Eigen::VectorXd::Zero(u.num_vertices());
  for (int i = 0; i < u.k; ++i) {
    u.supply(u.union_vertex(i, instance.pairs[i].source)) = 1.0;
    u.supply(u.union_vertex(i, instance.pairs[i].target)) = -1.0;
  }
  u.cost = instance.cost;
  u.conflicts = conflict_set(u);
  return u;
}

ConflictSet conflict_set(const UnionModel& model) {
  // Bucket union arcs by the base vertices they touch; only arcs sharing a
  // base vertex can conflict.
  struct Touch {
    ArcId arc;
    int copy;
    bool outgoing;
  };
  std::vector<std::vector<Touch>> by_vertex(model.base_vertices);
  for (ArcId e = 0; e < model.num_arcs(); ++e) {
    const Arc& a = model.graph.arc(e);
    const int copy = model.copy_of(e);
    by_vertex[model.base_vertex_of(a.tail)].push_back({e, copy, true});
    by_vertex[model.base_vertex_of(a.head)].push_back({e, copy, false});
  }
  std::vector<std::pair<ArcId, ArcId>> pairs;
  for (const auto& touches : by_vertex) {
    for (std::size_t x = 0; x < touches.size(); ++x) {
      for (std::size_t y = x + 1; y < touches.size(); ++y) {
        const Touch& p = touches[x];
        const Touch& q = touches[y];
        if (p.arc == q.arc) continue;
        const bool cross_copy = p.copy != q.copy;
        const bool same_side = p.copy == q.copy && p.outgoing == q.outgoing;
        if (cross_copy || same_side) pairs.emplace_back(p.arc, q.arc);
      }
    }
  }
  return ConflictSet(model.num_arcs(), std::move(pairs));
}

}  // namespace qkvdp
