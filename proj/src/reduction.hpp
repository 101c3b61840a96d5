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

#ifndef QKVDP_REDUCTION_HPP
#define QKVDP_REDUCTION_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "flow_model.hpp"
#include "graph.hpp"

namespace qkvdp {

/// Union-arc ids fixed to zero and to one, both sorted.
struct FixedArcSets {
  std::vector<ArcId> fixed_zero;
  std::vector<ArcId> fixed_one;
};

/// The reduced graph G = kG minus fixed arcs, with the objective rewritten as
/// x'Q'x' + c'x' + kappa on the remaining arcs.
struct ReducedModel {
  FlowModel model;
  FixedArcSets fixed;
  int union_arcs = 0;
  /// Union-arc id -> reduced arc index, or -1 for fixed arcs.
  std::vector<int> reduced_index;

  /// x on kG with x_E = x', x_E1 = 1 and x_E0 = 0.
  std::vector<int> lift(std::span<const int> reduced_x) const;
  /// x restricted to the arcs of G.
  std::vector<int> restrict_to_reduced(std::span<const int> union_x) const;
};

struct ReductionOptions {
  int threads = 1;
};

/// Arcs e = (u^i, v^i) such that routing s_i->u, v->t_i alongside the other
/// pairs is infeasible. Throws Infeasible when the instance itself has no
/// k vertex-disjoint routing.
std::vector<ArcId> fixed_zero_arcs(const Instance& instance, const UnionModel& model,
                                   const ReductionOptions& options = {});

/// Arcs whose base arc is needed by every routing and whose sibling copies
/// are all fixed to zero.
std::vector<ArcId> fixed_one_arcs(const Instance& instance, const UnionModel& model,
                                  std::span<const ArcId> fixed_zero,
                                  const ReductionOptions& options = {});

/// Arcs forced to zero by the unit vertex capacities of fixed-one arcs.
std::vector<ArcId> induced_fixed_zeros(const UnionModel& model, std::span<const ArcId> fixed_one);

/// Builds G and the rewritten objective. `fixed.fixed_zero` must already
/// contain the induced zeros. Throws Infeasible when a dropped vertex keeps a
/// nonzero supply.
ReducedModel reduce_model(const UnionModel& model, const FixedArcSets& fixed);

/// The identity reduction (no fixed arcs); solves the unreduced model.
ReducedModel identity_reduction(const UnionModel& model);

struct ReductionStats {
  int k = 0;
  int base_vertices = 0;  // m_v
  int initial_arcs = 0;   // k|E|
  int remaining_arcs = 0;
  double time_s = 0.0;
};

ReductionStats reduction_stats(const UnionModel& before, const ReducedModel& after,
                               double elapsed_s);

/// Runs the whole pipeline: union, fixed zeros, fixed ones, induced zeros
/// and the reduced model, timing the fixed-arc detection and model build.
struct Reduction {
  UnionModel union_model;
  ReducedModel reduced;
  ReductionStats stats;
};
Reduction reduce(const Instance& instance, const ReductionOptions& options = {});

/// Averages stats per (k, m_v) and writes "k,m_v,initial_arcs,remaining_arcs,time_s".
void write_stats_csv(std::ostream& os, std::span<const ReductionStats> rows, bool aggregate);

}  // namespace qkvdp

#endif  // QKVDP_REDUCTION_HPP
