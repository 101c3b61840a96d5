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


#ifndef QKVDP_TESTS_FIXTURES_HPP
#define QKVDP_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"

namespace qkvdp::testing {

/// Six vertices 1..6 (stored 0..5), arcs 1->5, 1->6, 3->5, 3->6, 5->2, 6->2,
/// 5->4, 6->4, pairs (1,2) and (3,4). Zero cost unless `seed` is nonzero.
Instance diamond_instance(std::uint64_t seed = 0);

/// W printed for the 16-arc union model (7x7) and for its reduced model (3x3).
Eigen::MatrixXd printed_w7();
Eigen::MatrixXd printed_w3();

/// s -> a -> t plus an unreachable two-cycle c <-> d whose arcs are fixed to
/// zero; the two-cycle has cost -20, the path cost +1.
Instance negative_cycle_instance();

/// Random digraph on `n` vertices with arc probability `p` (no self-loops,
/// anti-parallel arcs allowed), k random pairs, random dense cost.
Instance random_instance(int n, double p, int k, std::uint64_t seed);

/// Two random clusters joined by a single bridge arc; pair 0 crosses it, so
/// the bridge is needed by every routing. Extra pairs live in one cluster.
Instance bridge_instance(int cluster, int k, std::uint64_t seed);

/// Symmetric matrix with entries uniform in [-1, 1).
Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed);

}  // namespace qkvdp::testing

#endif  // QKVDP_TESTS_FIXTURES_HPP
