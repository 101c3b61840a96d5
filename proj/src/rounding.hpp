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


#ifndef QKVDP_ROUNDING_HPP
#define QKVDP_ROUNDING_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fixings.hpp"
#include "flow_model.hpp"

namespace qkvdp {

struct Rounding {
  std::vector<int> x;
  double value = 0.0;        // model objective of x
  double weight = 0.0;       // w^T x
  bool exhausted = false;    // node budget ran out; x is the best seen so far
};

/// max w^T x over path solutions: one path from every supply row to a
/// distinct demand row of the same copy, pairwise conflict-free, using every
/// arc fixed to one and no arc fixed to zero. Exact branch-and-prune DFS
/// (arcs tried by decreasing weight). Returns nullopt when no such solution
/// exists or none was found within `node_budget` expansions; `exhausted`
/// tells the two apart.
std::optional<Rounding> upper_bound(const Eigen::VectorXd& w, const FlowModel& model,
                                    const NodeFixings& fixings, long node_budget = 1000000,
                                    bool* exhausted = nullptr);

/// Rounds the lifted matrix: w_p = Y(p + 1, p + 1).
std::optional<Rounding> round_lifted(const Eigen::MatrixXd& y, const FlowModel& model,
                                     const NodeFixings& fixings, long node_budget = 1000000,
                                     bool* exhausted = nullptr);

}  // namespace qkvdp

#endif  // QKVDP_ROUNDING_HPP
