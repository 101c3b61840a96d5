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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "vdp_oracle.hpp"

using namespace qkvdp;

namespace {

bool witness_ok(const DirectedGraph& g, const std::vector<TerminalPair>& pairs,
                const std::vector<Path>& paths) {
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Path& p = paths[i];
    if (p.front() != pairs[i].source || p.back() != pairs[i].target) return false;
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      if (g.find_arc(p[j], p[j + 1]) < 0) return false;
    for (VertexId v : p)
      if (!seen.insert(v).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("diamond: both pairs route, crossing pairs do not") {
  const Instance inst = testing::diamond_instance();
  VdpQuery q{&inst.graph, inst.pairs, {}};
  const VdpResult r = feasible_vdp(q);
  REQUIRE(r.feasible);
  CHECK(witness_ok(inst.graph, inst.pairs, *r.witness));

  // 1->5->4 together with 3->5->2 would share vertex 5
  VdpQuery q2{&inst.graph, {{0, 3}, {2, 1}}, {}};
  CHECK(feasible_vdp(q2).feasible);
  VdpQuery q3{&inst.graph, {{0, 1}, {2, 3}}, {0, 1}};  // 1 loses both out-arcs
  CHECK_FALSE(feasible_vdp(q3).feasible);
}

TEST_CASE("shared terminals are infeasible, s == t is a single vertex") {
  const Instance inst = testing::diamond_instance();
  VdpQuery q{&inst.graph, {{0, 1}, {0, 3}}, {}};
  CHECK_FALSE(feasible_vdp(q).feasible);
  VdpQuery q2{&inst.graph, {{4, 4}}, {}};
  const VdpResult r = feasible_vdp(q2);
  REQUIRE(r.feasible);
  CHECK(r.witness->at(0) == Path{4});
}

TEST_CASE("oracle agrees with path enumeration on random graphs") {
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = testing::random_instance(6, 0.3, 2, seed);
    if (inst.graph.num_arcs() > 12) continue;
    const UnionModel u = disjoint_union(inst);
    const bool by_enum = !enumerate_bqp_feasible(u, 24).empty();
    const VdpResult r = feasible_vdp({&inst.graph, inst.pairs, {}});
    CHECK(r.feasible == by_enum);
    if (r.feasible) {
      ++feasible;
      CHECK(witness_ok(inst.graph, inst.pairs, *r.witness));
    }
  }
  CHECK(feasible > 0);
}

TEST_CASE("flow enumeration matches the independent brute force") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = testing::random_instance(5, 0.35, 2, seed);
    const UnionModel u = disjoint_union(inst);
    if (u.num_arcs() > 18) continue;
    const FlowModel m = to_flow_model(u);
    for (bool acyclic : {false, true}) {
      const auto lib = enumerate_flow_solutions(m, acyclic, 40);
      const auto ref = testing::brute_force_min(m, acyclic);
      CHECK(static_cast<long>(lib.size()) == (ref ? ref->feasible_count : 0));
    }
    // acyclic flow solutions are exactly the BQP solutions
    CHECK(enumerate_flow_solutions(m, true, 40).size() == enumerate_bqp_feasible(u, 40).size());
  }
}

TEST_CASE("the two-copy diamond union has exactly two routings") {
  const UnionModel u = disjoint_union(testing::diamond_instance());
  const auto sols = enumerate_bqp_feasible(u, 24);
  REQUIRE(sols.size() == 2);
  for (const auto& x : sols) {
    CHECK(std::count(x.begin(), x.end(), 1) == 4);
    // copy 1 through 5 forces copy 2 through 6 and vice versa
    const bool via5 = x[0] == 1;
    CHECK(x[u.union_arc(1, via5 ? 3 : 2)] == 1);
  }
}
