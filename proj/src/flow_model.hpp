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

#ifndef QKVDP_FLOW_MODEL_HPP
#define QKVDP_FLOW_MODEL_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"

namespace qkvdp {

/// An arc of a (possibly reduced) union graph, described in base terms.
struct FlowArc {
  int copy;
  VertexId tail;  // base vertex
  VertexId head;  // base vertex
  ArcId union_arc;
};

/// A vertex copy v^i kept as a row of the flow constraints.
struct FlowVertex {
  int copy;
  VertexId vertex;  // base vertex
  bool operator==(const FlowVertex&) const = default;
};

/// Binary quadratic program over a subgraph of kG:
///   min x'Qx + c'x + kappa  s.t.  A x = b,  x_p x_q = 0 for (p,q) in C,
/// with x binary. The union model is the instance with c = 0, kappa = 0.
/// Subtour-elimination constraints are optional (see is_feasible).
struct FlowModel {
  int k = 0;
  int base_vertices = 0;
  std::vector<FlowArc> arcs;
  std::vector<FlowVertex> vertices;
  std::vector<int> tail_row;  // per arc
  std::vector<int> head_row;  // per arc
  std::vector<std::vector<ArcId>> out_arcs;  // per row
  std::vector<std::vector<ArcId>> in_arcs;   // per row
  Eigen::VectorXd supply;
  ConflictSet conflicts;
  Eigen::MatrixXd quad;
  Eigen::VectorXd linear;
  double constant = 0.0;

  int num_arcs() const { return static_cast<int>(arcs.size()); }
  int num_rows() const { return static_cast<int>(vertices.size()); }

  /// Dense rows x arcs incidence matrix.
  Eigen::MatrixXd incidence() const;

  /// x'Qx + c'x + kappa for a 0/1 vector.
  double objective(std::span<const int> x) const;
  double objective(const Eigen::VectorXd& x) const;

  /// Rebuilds tail_row/head_row/out_arcs/in_arcs from arcs and vertices.
  void index_rows();
};

/// Builds the flow model of the full union graph.
FlowModel to_flow_model(const UnionModel& model);

/// Result of checking a 0/1 vector against a flow model.
struct FeasibilityReport {
  bool flow_ok = true;
  bool disjoint_ok = true;
  bool acyclic_ok = true;
  std::string message;

  bool subtour_relaxed_feasible() const { return flow_ok && disjoint_ok; }
  bool feasible() const { return flow_ok && disjoint_ok && acyclic_ok; }
};

/// Checks flow conservation, pairwise conflicts and whether the support
/// contains a cycle.
FeasibilityReport check_solution(const FlowModel& model, std::span<const int> x);

}  // namespace qkvdp

#endif  // QKVDP_FLOW_MODEL_HPP
