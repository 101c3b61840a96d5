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

#ifndef QKVDP_VDP_ORACLE_HPP
#define QKVDP_VDP_ORACLE_HPP

#include <optional>
#include <vector>

#include "flow_model.hpp"
#include "graph.hpp"

namespace qkvdp {

using Path = std::vector<VertexId>;

/// A k-VDP question on `graph` minus `removed_arcs`. Pairs may share
/// terminals; such queries are answered with strict vertex-disjointness,
/// i.e. they are infeasible.
struct VdpQuery {
  const DirectedGraph* graph = nullptr;
  std::vector<TerminalPair> pairs;
  std::vector<ArcId> removed_arcs;
};

struct VdpResult {
  bool feasible = false;
  /// One simple path per pair, in pair order, when feasible.
  std::optional<std::vector<Path>> witness;
};

/// Exact backtracking search for pairwise vertex-disjoint paths.
///
/// Pairs are routed one at a time by DFS over simple paths; the next pair to
/// route is the unrouted pair with the shortest residual distance (ties by
/// index). Every extension is pruned unless all unrouted pairs can still
/// reach their targets in the residual graph. A source equal to its target
/// is routed by the single-vertex path.
VdpResult feasible_vdp(const VdpQuery& query);

/// All x in {0,1}^n that are feasible for the union-graph BQP: every copy's
/// support is a simple s_i-t_i path and the paths are vertex-disjoint.
/// Throws InvalidInput when the union has more than `max_arcs` arcs.
std::vector<std::vector<int>> enumerate_bqp_feasible(const UnionModel& model,
                                                     int max_arcs = 24);

/// All x in {0,1}^n satisfying flow conservation and the conflict
/// constraints of `model`. With `acyclic_only`, supports containing a cycle
/// are dropped (the model with subtour elimination); otherwise cycles are
/// kept (the subtour-relaxed model).
std::vector<std::vector<int>> enumerate_flow_solutions(const FlowModel& model, bool acyclic_only,
                                                       int max_arcs = 40);

}  // namespace qkvdp

#endif  // QKVDP_VDP_ORACLE_HPP
