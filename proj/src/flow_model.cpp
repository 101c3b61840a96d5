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

#include "flow_model.hpp"

#include <cmath>
#include <map>

namespace qkvdp {

Eigen::MatrixXd FlowModel::incidence() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_rows(), num_arcs());
  for (ArcId e = 0; e < num_arcs(); ++e) {
    a(tail_row[e], e) = 1.0;
    a(head_row[e], e) = -1.0;
  }
  return a;
}

double FlowModel::objective(std::span<const int> x) const {
  Eigen::VectorXd v(num_arcs());
  for (int e = 0; e < num_arcs(); ++e) v(e) = x[e];
  return objective(v);
}

double FlowModel::objective(const Eigen::VectorXd& x) const {
  if (num_arcs() == 0) return constant;
  return x.dot(quad * x) + linear.dot(x) + constant;
}

void FlowModel::index_rows() {
  std::map<std::pair<int, VertexId>, int> row_of;
  for (int r = 0; r < num_rows(); ++r) row_of[{vertices[r].copy, vertices[r].vertex}] = r;
  tail_row.assign(num_arcs(), -1);
  head_row.assign(num_arcs(), -1);
  out_arcs.assign(num_rows(), {});
  in_arcs.assign(num_rows(), {});
  for (ArcId e = 0; e < num_arcs(); ++e) {
    const FlowArc& a = arcs[e];
    auto t = row_of.find({a.copy, a.tail});
    auto h = row_of.find({a.copy, a.head});
    if (t == row_of.end() || h == row_of.end())
      throw InvalidInput("arc " + std::to_string(e) + " has an endpoint without a vertex row");
    tail_row[e] = t->second;
    head_row[e] = h->second;
    out_arcs[t->second].push_back(e);
    in_arcs[h->second].push_back(e);
  }
}

FlowModel to_flow_model(const UnionModel& model) {
  FlowModel f;
  f.k = model.k;
  f.base_vertices = model.base_vertices;
  for (int i = 0; i < model.k; ++i)
    for (VertexId v = 0; v < model.base_vertices; ++v) f.vertices.push_back({i, v});
  for (ArcId e = 0; e < model.num_arcs(); ++e) {
    const Arc& a = model.graph.arc(e);
    f.arcs.push_back({model.copy_of(e), model.base_vertex_of(a.tail),
                      model.base_vertex_of(a.head), e});
  }
  f.index_rows();
  f.supply = model.supply;
  f.conflicts = model.conflicts;
  f.quad = model.cost;
  f.linear = Eigen::VectorXd::Zero(model.num_arcs());
  f.constant = 0.0;
  return f;
}

FeasibilityReport check_solution(const FlowModel& model, std::span<const int> x) {
  FeasibilityReport rep;
  const int n = model.num_arcs();
  if (static_cast<int>(x.size()) != n) {
    rep.flow_ok = rep.disjoint_ok = rep.acyclic_ok = false;
    rep.message = "vector length does not match the arc count";
    return rep;
  }
  for (int r = 0; r < model.num_rows() && rep.flow_ok; ++r) {
    int net = 0;
    for (ArcId e : model.out_arcs[r]) net += x[e];
    for (ArcId e : model.in_arcs[r]) net -= x[e];
    if (std::abs(net - model.supply(r)) > 1e-9) {
      rep.flow_ok = false;
      rep.message = "flow conservation violated at row " + std::to_string(r);
    }
  }
  for (const auto& [p, q] : model.conflicts.pairs()) {
    if (x[p] && x[q]) {
      rep.disjoint_ok = false;
      if (rep.message.empty())
        rep.message = "conflicting arcs " + std::to_string(p) + " and " + std::to_string(q);
      break;
    }
  }
  if (!rep.subtour_relaxed_feasible()) {
    rep.acyclic_ok = false;
    return rep;
  }
  // With at most one active in/out arc per row, the support is a union of
  // paths between supply and demand rows plus vertex-disjoint cycles. Walk
  // every path from its supply row; arcs left over lie on cycles.
  std::vector<ArcId> active_out(model.num_rows(), -1);
  int support = 0;
  for (ArcId e = 0; e < n; ++e) {
    if (!x[e]) continue;
    ++support;
    active_out[model.tail_row[e]] = e;
  }
  int walked = 0;
  for (int r = 0; r < model.num_rows(); ++r) {
    if (model.supply(r) <= 0.5) continue;
    int row = r;
    int guard = 0;
    while (active_out[row] >= 0 && guard++ <= n) {
      ++walked;
      row = model.head_row[active_out[row]];
    }
  }
  if (walked != support) {
    rep.acyclic_ok = false;
    rep.message = "support contains a cycle";
  }
  return rep;
}

}  // namespace qkvdp
