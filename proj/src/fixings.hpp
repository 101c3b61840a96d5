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


#ifndef QKVDP_FIXINGS_HPP
#define QKVDP_FIXINGS_HPP

#include <vector>

#include "flow_model.hpp"

namespace qkvdp {

/// Branching decisions of a B&B node. Entry p refers to arc p, i.e. lifted
/// index p + 1; -1 means free.
struct NodeFixings {
  std::vector<signed char> value;

  NodeFixings() = default;
  explicit NodeFixings(int num_arcs) : value(num_arcs, -1) {}

  int size() const { return static_cast<int>(value.size()); }
  bool is_free(int p) const { return value[p] < 0; }
  bool is_fixed(int p, int v) const { return value[p] == v; }
  int num_free() const;
  bool all_fixed() const { return num_free() == 0; }

  /// No two arcs fixed to one conflict.
  bool conflict_consistent(const ConflictSet& conflicts) const;

  /// The fixed values as a 0/1 vector; requires all_fixed().
  std::vector<int> assignment() const;
};

/// Closes `fixings` under the conflict constraints and per-row flow
/// conservation (at most one arc leaves and one enters each row). Returns
/// false when the node has no subtour-relaxed feasible completion by these
/// rules; `fixings` is then left in an unspecified state.
bool propagate_fixings(const FlowModel& model, NodeFixings& fixings);

}  // namespace qkvdp

#endif  // QKVDP_FIXINGS_HPP
