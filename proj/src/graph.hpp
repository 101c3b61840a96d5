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

#ifndef QKVDP_GRAPH_HPP
#define QKVDP_GRAPH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qkvdp {

using VertexId = int;
using ArcId = int;

/// Raised for malformed instances, models and parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a query proves that no k vertex-disjoint routing exists.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arc {
  VertexId tail;
  VertexId head;
  bool operator==(const Arc&) const = default;
};

/// Simple directed graph with dense 0-based vertex and arc ids.
/// No self-loops and no parallel arcs.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(int num_vertices, std::vector<Arc> arcs);

  int num_vertices() const { return num_vertices_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(ArcId e) const { return arcs_[e]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<ArcId>& out_arcs(VertexId v) const { return out_[v]; }
  const std::vector<ArcId>& in_arcs(VertexId v) const { return in_[v]; }

  /// Arc id of (tail, head), or -1.
  ArcId find_arc(VertexId tail, VertexId head) const;

 private:
  int num_vertices_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

struct TerminalPair {
  VertexId source;
  VertexId target;
  bool operator==(const TerminalPair&) const = default;
};

/// Base graph, k terminal pairs and a symmetric cost matrix over the
/// union-graph arcs (copy-major, base-arc-minor).
struct Instance {
  DirectedGraph graph;
  std::vector<TerminalPair> pairs;
  Eigen::MatrixXd cost;

  int k() const { return static_cast<int>(pairs.size()); }
  int num_union_arcs() const { return k() * graph.num_arcs(); }

  /// Throws InvalidInput when a type invariant is violated.
  void validate() const;
};

/// Symmetrizes `cost` in place as (Q + Q^T)/2 and returns the largest
/// asymmetry |Q_ij - Q_ji| seen before symmetrizing.
double symmetrize(Eigen::MatrixXd& cost);

/// Unordered arc-index pairs stored as (p, q) with p < q, sorted.
class ConflictSet {
 public:
  ConflictSet() = default;
  ConflictSet(int num_arcs, std::vector<std::pair<ArcId, ArcId>> pairs);

  const std::vector<std::pair<ArcId, ArcId>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<ArcId>& neighbors(ArcId e) const { return neighbors_[e]; }
  bool contains(ArcId p, ArcId q) const;

 private:
  std::vector<std::pair<ArcId, ArcId>> pairs_;
  std::vector<std::vector<ArcId>> neighbors_;
};

/// The disjoint union kG. Union vertex v^i has id i*|N| + v and union arc
/// (u^i, v^i) for base arc a has id i*|E| + a (copies 0-based).
struct UnionModel {
  int k = 0;
  int base_vertices = 0;
  int base_arcs = 0;
  DirectedGraph graph;
  Eigen::VectorXd supply;
  ConflictSet conflicts;
  Eigen::MatrixXd cost;
  std::vector<TerminalPair> pairs;

  int num_vertices() const { return graph.num_vertices(); }
  int num_arcs() const { return graph.num_arcs(); }
  ArcId union_arc(int copy, ArcId base_arc) const { return copy * base_arcs + base_arc; }
  int copy_of(ArcId e) const { return e / base_arcs; }
  ArcId base_arc_of(ArcId e) const { return e % base_arcs; }
  VertexId union_vertex(int copy, VertexId v) const { return copy * base_vertices + v; }
  VertexId base_vertex_of(VertexId uv) const { return uv % base_vertices; }

  /// Dense m x n vertex-arc incidence (+1 at the tail, -1 at the head).
  Eigen::MatrixXd incidence() const;
};

UnionModel disjoint_union(const Instance& instance);

/// Mutually exclusive arc pairs of a union graph: arcs touching copies of the
/// same base vertex in different copies, or distinct arcs sharing a tail or a
/// head inside one copy.
ConflictSet conflict_set(const UnionModel& model);

}  // namespace qkvdp

#endif  // QKVDP_GRAPH_HPP
