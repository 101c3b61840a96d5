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


#include "instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "rng.hpp"
#include "vdp_oracle.hpp"

namespace qkvdp {

void GenConfig::validate() const {
  if (num_vertices < 4) throw InvalidInput("m_v must be at least 4");
  bool factorable = false;
  for (int r = 2; r * 2 <= num_vertices; ++r)
    if (num_vertices % r == 0 && num_vertices / r >= 2) factorable = true;
  if (!factorable)
    throw InvalidInput("m_v = " + std::to_string(num_vertices) +
                       " has no factorization rows x cols with both >= 2");
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (2 * k > num_vertices) throw InvalidInput("2k terminals do not fit in m_v vertices");
  if (!(density > 0.0 && density <= 1.0)) throw InvalidInput("density must lie in (0, 1]");
  if (!(cost_lo < cost_hi)) throw InvalidInput("cost range is empty");
  if (max_retries < 1) throw InvalidInput("max_retries must be positive");
}

Eigen::MatrixXd cost_matrix(int n, double density, double lo, double hi, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw InvalidInput("density must lie in (0, 1]");
  Rng rng(seed, 2);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const bool on = rng.uniform() < density;
      const double v = rng.uniform(lo, hi);
      if (on) q(i, j) = q(j, i) = v;
    }
  return q;
}

namespace {

struct Topology {
  int n = 0;
  std::set<std::pair<int, int>> arcs;

  int out_degree(int v) const {
    int d = 0;
    for (const auto& [t, h] : arcs) d += t == v;
    return d;
  }
  int in_degree(int v) const {
    int d = 0;
    for (const auto& [t, h] : arcs) d += h == v;
    return d;
  }
};

Topology grid(int rows, int cols) {
  Topology g;
  g.n = rows * cols;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        g.arcs.insert({id(r, c), id(r, c + 1)});
        g.arcs.insert({id(r, c + 1), id(r, c)});
      }
      if (r + 1 < rows) {
        g.arcs.insert({id(r, c), id(r + 1, c)});
        g.arcs.insert({id(r + 1, c), id(r, c)});
      }
    }
  return g;
}

// Rule (i): no arcs into sources, no arcs out of targets.
void strip_terminal_arcs(Topology& g, const std::vector<TerminalPair>& pairs) {
  std::set<int> src, dst;
  for (const auto& p : pairs) {
    src.insert(p.source);
    dst.insert(p.target);
  }
  std::erase_if(g.arcs, [&](const std::pair<int, int>& a) {
    return src.count(a.second) > 0 || dst.count(a.first) > 0;
  });
}

bool is_terminal(const std::vector<TerminalPair>& pairs, int v) {
  for (const auto& p : pairs)
    if (p.source == v || p.target == v) return true;
  return false;
}

// Applies rules (i) and (ii) to a fixpoint. Returns false when a terminal
// runs into a dead end or into another terminal.
bool preprocess(Topology& g, std::vector<TerminalPair>& pairs) {
  for (int step = 0; step <= g.n; ++step) {
    strip_terminal_arcs(g, pairs);
    bool moved = false;
    for (auto& p : pairs) {
      if (g.out_degree(p.source) == 0 || g.in_degree(p.target) == 0) return false;
      if (g.out_degree(p.source) == 1) {
        int next = -1;
        for (const auto& [t, h] : g.arcs)
          if (t == p.source) next = h;
        if (is_terminal(pairs, next)) return false;
        p.source = next;
        moved = true;
        break;
      }
      if (g.in_degree(p.target) == 1) {
        int prev = -1;
        for (const auto& [t, h] : g.arcs)
          if (h == p.target) prev = t;
        if (is_terminal(pairs, prev)) return false;
        p.target = prev;
        moved = true;
        break;
      }
    }
    if (!moved) return true;
  }
  return false;
}

}  // namespace

GeneratedInstance generate(const GenConfig& config) {
  config.validate();
  std::vector<std::pair<int, int>> shapes;
  for (int r = 2; r * 2 <= config.num_vertices; ++r)
    if (config.num_vertices % r == 0 && config.num_vertices / r >= 2)
      shapes.emplace_back(r, config.num_vertices / r);

  Rng shape_rng(config.seed, 0);
  Rng terminal_rng(config.seed, 1);
  for (int attempt = 1; attempt <= config.max_retries; ++attempt) {
    const auto [rows, cols] = shapes[shape_rng.below(shapes.size())];
    Topology g = grid(rows, cols);

    // 2k distinct vertices by a partial Fisher-Yates shuffle.
    std::vector<int> perm(g.n);
    for (int v = 0; v < g.n; ++v) perm[v] = v;
    for (int i = 0; i < 2 * config.k; ++i)
      std::swap(perm[i], perm[i + terminal_rng.below(g.n - i)]);
    std::vector<TerminalPair> pairs;
    for (int i = 0; i < config.k; ++i) pairs.push_back({perm[2 * i], perm[2 * i + 1]});

    if (!preprocess(g, pairs)) continue;
    bool ok = true;
    for (const auto& p : pairs)
      ok = ok && g.out_degree(p.source) >= 2 && g.in_degree(p.target) >= 2;
    if (!ok) continue;

    std::vector<Arc> arcs;
    for (const auto& [t, h] : g.arcs) arcs.push_back({t, h});
    GeneratedInstance out;
    out.instance.graph = DirectedGraph(g.n, std::move(arcs));
    out.instance.pairs = pairs;
    VdpQuery q{&out.instance.graph, pairs, {}};
    if (!feasible_vdp(q).feasible) continue;

    const int n = config.k * out.instance.graph.num_arcs();
    out.instance.cost =
        cost_matrix(n, config.density, config.cost_lo, config.cost_hi, config.seed);
    out.instance.validate();
    out.rows = rows;
    out.cols = cols;
    out.attempts = attempt;
    return out;
  }
  throw InvalidInput("no valid instance after " + std::to_string(config.max_retries) +
                     " attempts (seed " + std::to_string(config.seed) + ", m_v " +
                     std::to_string(config.num_vertices) + ", k " + std::to_string(config.k) +
                     ")");
}

}  // namespace qkvdp
