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


#ifndef QKVDP_BNB_HPP
#define QKVDP_BNB_HPP

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "admm.hpp"
#include "fixings.hpp"
#include "flow_model.hpp"
#include "sdp_model.hpp"

namespace qkvdp {

enum class BnbStatus { optimal, time_limit, infeasible };

const char* to_string(BnbStatus s);

/// Reported once per evaluated node.
struct NodeEvent {
  long id = 0;
  int depth = 0;
  const NodeFixings* fixings = nullptr;
  bool leaf = false;
  /// Safe bound computed at this node (for leaves: the leaf value, or +inf).
  double lower_bound = 0.0;
  std::optional<double> upper;
  const std::vector<int>* x = nullptr;  // the node's feasible point, if any
};

struct BnbParams {
  double time_limit = 3600.0;  // seconds, checked after each node
  double gap_tol = 1e-6;
  double prune_tol = 1e-6;
  int threads = 1;
  bool warm_start = true;
  AdmmParams admm = default_node_admm();
  /// Called under the driver lock.
  std::function<void(const NodeEvent&)> observer;

  /// Node relaxations stop early once their bound stalls.
  static AdmmParams default_node_admm() {
    AdmmParams p;
    p.stall_window = 500;
    p.stall_tol = 1e-5;
    return p;
  }
};

struct BnbResult {
  BnbStatus status = BnbStatus::infeasible;
  std::vector<int> incumbent;
  double incumbent_value = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  long nodes = 0;
  double time_s = 0.0;
};

/// |ub - lb| / max(|ub|, 1e-8).
double gap(double f_ub, double f_lb);

/// Best-first B&B on the subtour-relaxed model with ADMM node relaxations.
/// Branches on the most fractional diagonal entry; "x_p = 1" children fix
/// the conflict neighbors of p to zero, and all children are closed under
/// propagate_fixings.
BnbResult solve_bnb(const FlowModel& model, const SdpRelaxation& sdp, const BnbParams& params = {});

}  // namespace qkvdp

#endif  // QKVDP_BNB_HPP
