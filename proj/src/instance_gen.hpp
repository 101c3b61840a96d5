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


#ifndef QKVDP_INSTANCE_GEN_HPP
#define QKVDP_INSTANCE_GEN_HPP

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "graph.hpp"

namespace qkvdp {

inline constexpr const char* kGeneratorVersion = "qkvdp-grid-1";

struct GenConfig {
  int num_vertices = 20;  // m_v, must factor as rows x cols with both >= 2
  int k = 2;
  std::uint64_t seed = 1;
  double density = 0.5;  // of the upper triangle of Q~, diagonal included
  double cost_lo = -10.0;
  double cost_hi = 10.0;
  int max_retries = 200;

  /// Throws InvalidInput.
  void validate() const;
};

struct GeneratedInstance {
  Instance instance;
  int rows = 0;
  int cols = 0;
  int attempts = 0;
};

/// Random grid with anti-parallel arcs, k random terminal pairs, and the
/// preprocessing that leaves sources without in-arcs and with at least two
/// out-arcs (targets symmetric). Random streams: 0 grid shape, 1 terminals,
/// 2 costs, all derived from config.seed (see Rng).
GeneratedInstance generate(const GenConfig& config);

/// Symmetric n x n matrix: each entry (i, j), i <= j, is nonzero with
/// probability `density` and then uniform in [lo, hi).
Eigen::MatrixXd cost_matrix(int n, double density, double lo, double hi, std::uint64_t seed);

}  // namespace qkvdp

#endif  // QKVDP_INSTANCE_GEN_HPP
