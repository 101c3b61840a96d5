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

#include "reduction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <thread>

#include "vdp_oracle.hpp"

namespace qkvdp {
namespace {

// Evaluates test(e) for e in [0, count) on up to `threads` workers and
// returns the indices where it held, in ascending order.
std::vector<int> parallel_select(int count, int threads, const std::function<bool(int)>& test) {
  std::vector<char> hit(count, 0);
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int e = 0; e < count; ++e) hit[e] = test(e);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int e = w; e < count; e += threads) hit[e] = test(e);
      });
  }
  std::vector<int> out;
  for (int e = 0; e < count; ++e)
    if (hit[e]) out.push_back(e);
  return out;
}

bool contains_sorted(std::span<const ArcId> v, ArcId e) {
  return std::binary_search(v.begin(), v.end(), e);
}

}  // namespace

std::vector<int> ReducedModel::lift(std::span<const int> reduced_x) const {
  std::vector<int> x(union_arcs, 0);
  for (ArcId e : fixed.fixed_one) x[e] = 1;
  for (int r = 0; r < model.num_arcs(); ++r) x[model.arcs[r].union_arc] = reduced_x[r];
  return x;
}

std::vector<int> ReducedModel::restrict_to_reduced(std::span<const int> union_x) const {
  std::vector<int> x(model.num_arcs(), 0);
  for (int r = 0; r < model.num_arcs(); ++r) x[r] = union_x[model.arcs[r].union_arc];
  return x;
}

std::vector<ArcId> fixed_zero_arcs(const Instance& instance, const UnionModel& model,
                                   const ReductionOptions& options) {
  const VdpQuery original{&instance.graph, instance.pairs, {}};
  if (!feasible_vdp(original).feasible)
    throw Infeasible("instance has no k vertex-disjoint routing");
  return parallel_select(model.num_arcs(), options.threads, [&](int e) {
    const int i = model.copy_of(e);
    const Arc& a = instance.graph.arc(model.base_arc_of(e));
    VdpQuery q{&instance.graph, {}, {}};
    for (int j = 0; j < model.k; ++j) {
      if (j == i) {
        q.pairs.push_back({instance.pairs[j].source, a.tail});
        q.pairs.push_back({a.head, instance.pairs[j].target});
      } else {
        q.pairs.push_back(instance.pairs[j]);
      }
    }
    return !feasible_vdp(q).feasible;
  });
}

std::vector<ArcId> fixed_one_arcs(const Instance& instance, const UnionModel& model,
                                  std::span<const ArcId> fixed_zero,
                                  const ReductionOptions& options) {
  // Deletion test (a) depends only on the base arc.
  const std::vector<int> needed =
      parallel_select(model.base_arcs, options.threads, [&](int a) {
        return !feasible_vdp({&instance.graph, instance.pairs, {a}}).feasible;
      });
  std::vector<ArcId> out;
  for (int a : needed) {
    for (int i = 0; i < model.k; ++i) {
      const ArcId e = model.union_arc(i, a);
      if (contains_sorted(fixed_zero, e)) continue;
      bool siblings_zero = true;
      for (int j = 0; j < model.k && siblings_zero; ++j)
        if (j != i && !contains_sorted(fixed_zero, model.union_arc(j, a))) siblings_zero = false;
      if (siblings_zero) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ArcId> induced_fixed_zeros(const UnionModel& model, std::span<const ArcId> fixed_one) {
  std::vector<char> mark(model.num_arcs(), 0);
  for (ArcId e : fixed_one) {
    const int i = model.copy_of(e);
    const Arc& ua = model.graph.arc(e);
    const VertexId u = model.base_vertex_of(ua.tail);
    const VertexId v = model.base_vertex_of(ua.head);
    for (int j = 0; j < model.k; ++j) {
      if (j == i) continue;
      for (VertexId w : {u, v}) {
        const VertexId wj = model.union_vertex(j, w);
        for (ArcId f : model.graph.out_arcs(wj)) mark[f] = 1;
        for (ArcId f : model.graph.in_arcs(wj)) mark[f] = 1;
      }
    }
    for (ArcId f : model.graph.out_arcs(ua.tail))
      if (f != e) mark[f] = 1;
    for (ArcId f : model.graph.in_arcs(ua.head))
      if (f != e) mark[f] = 1;
  }
  std::vector<ArcId> out;
  for (ArcId f = 0; f < model.num_arcs(); ++f)
    if (mark[f]) out.push_back(f);
  return out;
}

ReducedModel reduce_model(const UnionModel& model, const FixedArcSets& fixed) {
  const int n = model.num_arcs();
  std::vector<int> state(n, -1);  // -1 free, 0 / 1 fixed
  for (ArcId e : fixed.fixed_zero) {
    if (e < 0 || e >= n) throw InvalidInput("fixed-zero arc out of range");
    state[e] = 0;
  }
  for (ArcId e : fixed.fixed_one) {
    if (e < 0 || e >= n) throw InvalidInput("fixed-one arc out of range");
    if (state[e] == 0) throw InvalidInput("arc " + std::to_string(e) + " is fixed to zero and one");
    state[e] = 1;
  }

  ReducedModel r;
  r.fixed = fixed;
  std::sort(r.fixed.fixed_zero.begin(), r.fixed.fixed_zero.end());
  std::sort(r.fixed.fixed_one.begin(), r.fixed.fixed_one.end());
  r.union_arcs = n;
  r.reduced_index.assign(n, -1);

  FlowModel& g = r.model;
  g.k = model.k;
  g.base_vertices = model.base_vertices;
  std::vector<ArcId> kept;
  for (ArcId e = 0; e < n; ++e) {
    if (state[e] != -1) continue;
    r.reduced_index[e] = static_cast<int>(kept.size());
    kept.push_back(e);
    const Arc& a = model.graph.arc(e);
    g.arcs.push_back({model.copy_of(e), model.base_vertex_of(a.tail), model.base_vertex_of(a.head), e});
  }

  // b' = b - sum_{e in E1} A_e, then drop vertices with no remaining arcs.
  Eigen::VectorXd b = model.supply;
  for (ArcId e : r.fixed.fixed_one) {
    b(model.graph.arc(e).tail) -= 1.0;
    b(model.graph.arc(e).head) += 1.0;
  }
  std::vector<char> touched(model.num_vertices(), 0);
  for (ArcId e : kept) {
    touched[model.graph.arc(e).tail] = 1;
    touched[model.graph.arc(e).head] = 1;
  }
  std::vector<double> supply;
  for (VertexId uv = 0; uv < model.num_vertices(); ++uv) {
    if (!touched[uv]) {
      if (std::abs(b(uv)) > 1e-9)
        throw Infeasible("vertex " + std::to_string(uv) +
                         " keeps a nonzero supply but has no remaining arcs");
      continue;
    }
    g.vertices.push_back({uv / model.base_vertices, model.base_vertex_of(uv)});
    supply.push_back(b(uv));
  }
  g.supply = Eigen::Map<Eigen::VectorXd>(supply.data(), static_cast<Eigen::Index>(supply.size()));
  g.index_rows();

  const int nr = static_cast<int>(kept.size());
  g.quad.resize(nr, nr);
  g.linear = Eigen::VectorXd::Zero(nr);
  for (int p = 0; p < nr; ++p)
    for (int q = 0; q < nr; ++q) g.quad(p, q) = model.cost(kept[p], kept[q]);
  for (int p = 0; p < nr; ++p)
    for (ArcId f : r.fixed.fixed_one)
      g.linear(p) += model.cost(kept[p], f) + model.cost(f, kept[p]);
  g.constant = 0.0;
  for (ArcId e : r.fixed.fixed_one)
    for (ArcId f : r.fixed.fixed_one) g.constant += model.cost(e, f);

  std::vector<std::pair<ArcId, ArcId>> conflicts;
  for (const auto& [p, q] : model.conflicts.pairs())
    if (r.reduced_index[p] >= 0 && r.reduced_index[q] >= 0)
      conflicts.emplace_back(r.reduced_index[p], r.reduced_index[q]);
  g.conflicts = ConflictSet(nr, std::move(conflicts));
  return r;
}

ReducedModel identity_reduction(const UnionModel& model) { return reduce_model(model, {}); }

ReductionStats reduction_stats(const UnionModel& before, const ReducedModel& after,
                               double elapsed_s) {
  return {before.k, before.base_vertices, before.num_arcs(), after.model.num_arcs(), elapsed_s};
}

Reduction reduce(const Instance& instance, const ReductionOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Reduction out;
  out.union_model = disjoint_union(instance);
  FixedArcSets fixed;
  fixed.fixed_zero = fixed_zero_arcs(instance, out.union_model, options);
  fixed.fixed_one = fixed_one_arcs(instance, out.union_model, fixed.fixed_zero, options);
  const std::vector<ArcId> induced = induced_fixed_zeros(out.union_model, fixed.fixed_one);
  std::vector<ArcId> zeros;
  std::set_union(fixed.fixed_zero.begin(), fixed.fixed_zero.end(), induced.begin(), induced.end(),
                 std::back_inserter(zeros));
  fixed.fixed_zero = std::move(zeros);
  out.reduced = reduce_model(out.union_model, fixed);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.stats = reduction_stats(out.union_model, out.reduced, elapsed);
  return out;
}

void write_stats_csv(std::ostream& os, std::span<const ReductionStats> rows, bool aggregate) {
  os << "k,m_v,initial_arcs,remaining_arcs,time_s\n";
  if (!aggregate) {
    for (const auto& s : rows)
      os << s.k << ',' << s.base_vertices << ',' << s.initial_arcs << ',' << s.remaining_arcs
         << ',' << s.time_s << '\n';
    return;
  }
  struct Acc {
    double initial = 0, remaining = 0, time = 0;
    int count = 0;
  };
  std::map<std::pair<int, int>, Acc> groups;
  for (const auto& s : rows) {
    Acc& a = groups[{s.k, s.base_vertices}];
    a.initial += s.initial_arcs;
    a.remaining += s.remaining_arcs;
    a.time += s.time_s;
    ++a.count;
  }
  for (const auto& [key, a] : groups)
    os << key.first << ',' << key.second << ',' << a.initial / a.count << ','
       << a.remaining / a.count << ',' << a.time / a.count << '\n';
}

}  // namespace qkvdp
