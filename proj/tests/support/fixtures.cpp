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


#include "fixtures.hpp"

#include "instance_gen.hpp"
#include "rng.hpp"

namespace qkvdp::testing {

Instance diamond_instance(std::uint64_t seed) {
  Instance inst;
  inst.graph = DirectedGraph(6, {{0, 4}, {0, 5}, {2, 4}, {2, 5}, {4, 1}, {5, 1}, {4, 3}, {5, 3}});
  inst.pairs = {{0, 1}, {2, 3}};
  const int n = 16;
  inst.cost = seed == 0 ? Eigen::MatrixXd::Zero(n, n) : cost_matrix(n, 1.0, -10.0, 10.0, seed);
  return inst;
}

Eigen::MatrixXd printed_w7() {
  Eigen::MatrixXd w(7, 7);
  w << 0.2140, 0, 0, 0, 0, 0, 0,
       0, 0.2141, 0, 0, 0, 0, 0,
       0, 0, 0.0953, 0.0262, -0.0953, -0.0262, -0.0287,
       0, 0, 0.0262, 0.0722, -0.0262, -0.0722, 0.0174,
       0, 0, -0.0953, -0.0262, 0.0953, 0.0262, 0.0287,
       0, 0, -0.0262, -0.0722, 0.0262, 0.0722, -0.0173,
       0, 0, -0.0287, 0.0174, 0.0287, -0.0173, 0.2367;
  return w;
}

Eigen::MatrixXd printed_w3() {
  Eigen::MatrixXd w(3, 3);
  w << 0.5, -0.5, 0, -0.5, 0.5, 0, 0, 0, 0;
  return w;
}

Instance negative_cycle_instance() {
  // s=0, a=1, t=2, c=3, d=4
  Instance inst;
  inst.graph = DirectedGraph(5, {{0, 1}, {1, 2}, {3, 4}, {4, 3}});
  inst.pairs = {{0, 2}};
  inst.cost = Eigen::MatrixXd::Zero(4, 4);
  inst.cost(0, 0) = 1.0;
  inst.cost(2, 3) = inst.cost(3, 2) = -10.0;
  return inst;
}

Instance random_instance(int n, double p, int k, std::uint64_t seed) {
  Rng rng(seed, 11);
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && rng.uniform() < p) arcs.push_back({u, v});
  std::vector<int> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  for (int i = 0; i < 2 * k && i < n; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
  Instance inst;
  inst.graph = DirectedGraph(n, std::move(arcs));
  for (int i = 0; i < k; ++i) inst.pairs.push_back({perm[2 * i], perm[2 * i + 1]});
  const int m = k * inst.graph.num_arcs();
  inst.cost = cost_matrix(m, 0.7, -10.0, 10.0, seed);
  return inst;
}

Instance bridge_instance(int cluster, int k, std::uint64_t seed) {
  Rng rng(seed, 12);
  const int n = 2 * cluster;
  std::vector<Arc> arcs;
  for (int side = 0; side < 2; ++side)
    for (int u = 0; u < cluster; ++u)
      for (int v = 0; v < cluster; ++v)
        if (u != v && rng.uniform() < 0.45) arcs.push_back({side * cluster + u, side * cluster + v});
  // bridge from the last vertex of cluster 0 to the first of cluster 1
  arcs.push_back({cluster - 1, cluster});
  Instance inst;
  inst.graph = DirectedGraph(n, std::move(arcs));
  inst.pairs.push_back({static_cast<int>(rng.below(cluster - 1)),
                        cluster + 1 + static_cast<int>(rng.below(cluster - 1))});
  for (int i = 1; i < k; ++i) {
    const int side = static_cast<int>(rng.below(2));
    inst.pairs.push_back({side * cluster + static_cast<int>(rng.below(cluster)),
                          side * cluster + static_cast<int>(rng.below(cluster))});
  }
  const int m = k * inst.graph.num_arcs();
  inst.cost = cost_matrix(m, 0.7, -10.0, 10.0, seed);
  return inst;
}

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed, 13);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace qkvdp::testing
