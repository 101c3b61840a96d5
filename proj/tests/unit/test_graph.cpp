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

#include "fixtures.hpp"
#include "graph.hpp"

using namespace qkvdp;

TEST_CASE("disjoint union of the diamond graph") {
  const Instance inst = testing::diamond_instance();
  const UnionModel u = disjoint_union(inst);
  CHECK(u.num_vertices() == 12);
  CHECK(u.num_arcs() == 16);
  // copy-major, base-arc-minor
  CHECK(u.union_arc(1, 3) == 11);
  CHECK(u.copy_of(11) == 1);
  CHECK(u.base_arc_of(11) == 3);
  CHECK(u.graph.arc(11).tail == u.union_vertex(1, 2));
  CHECK(u.supply(u.union_vertex(0, 0)) == 1);
  CHECK(u.supply(u.union_vertex(0, 1)) == -1);
  CHECK(u.supply(u.union_vertex(1, 2)) == 1);
  CHECK(u.supply(u.union_vertex(1, 3)) == -1);
  CHECK((u.supply.array() != 0).count() == 4);
}

TEST_CASE("single copy is the base graph") {
  Instance inst;
  inst.graph = DirectedGraph(3, {{0, 1}, {1, 2}});
  inst.pairs = {{0, 2}};
  inst.cost = Eigen::MatrixXd::Zero(2, 2);
  const UnionModel u = disjoint_union(inst);
  CHECK(u.num_arcs() == 2);
  CHECK(u.graph.arc(1) == Arc{1, 2});
  CHECK(u.supply(0) == 1);
  CHECK(u.supply(2) == -1);
  CHECK(conflict_set(u).size() == 0);
}

TEST_CASE("three copies: sizes and incidence columns") {
  Instance inst;
  inst.graph = DirectedGraph(3, {{0, 1}, {1, 2}});
  inst.pairs = {{0, 1}, {1, 2}, {2, 0}};
  inst.cost = Eigen::MatrixXd::Zero(6, 6);
  const UnionModel u = disjoint_union(inst);
  CHECK(u.num_vertices() == 9);
  CHECK(u.num_arcs() == 6);
  const Eigen::MatrixXd a = u.incidence();
  for (int e = 0; e < 6; ++e) {
    CHECK(a.col(e).sum() == 0.0);
    CHECK((a.col(e).array() != 0).count() == 2);
    CHECK(a(u.graph.arc(e).tail, e) == 1.0);
    CHECK(a(u.graph.arc(e).head, e) == -1.0);
  }
}

TEST_CASE("conflicts of the diamond union") {
  const UnionModel u = disjoint_union(testing::diamond_instance());
  const ConflictSet c = conflict_set(u);
  CHECK(c.contains(0, 1));            // 1^1->5^1, 1^1->6^1 share a tail
  CHECK(c.contains(0, u.union_arc(1, 2)));  // 1^1->5^1 and 3^2->5^2
  CHECK_FALSE(c.contains(0, 5));      // 1^1->5^1 and 6^1->2^1
  CHECK(c.size() == 56);

  // brute-force double loop over arc pairs
  std::size_t count = 0;
  for (int p = 0; p < u.num_arcs(); ++p)
    for (int q = p + 1; q < u.num_arcs(); ++q) {
      const Arc& a = u.graph.arc(p);
      const Arc& b = u.graph.arc(q);
      bool hit;
      if (u.copy_of(p) != u.copy_of(q)) {
        auto bv = [&](VertexId v) { return u.base_vertex_of(v); };
        hit = bv(a.tail) == bv(b.tail) || bv(a.tail) == bv(b.head) || bv(a.head) == bv(b.tail) ||
              bv(a.head) == bv(b.head);
      } else {
        hit = a.tail == b.tail || a.head == b.head;
      }
      CHECK(hit == c.contains(p, q));
      count += hit;
    }
  CHECK(count == c.size());
}

TEST_CASE("conflict pairs are canonical") {
  const UnionModel u = disjoint_union(testing::random_instance(6, 0.4, 2, 3));
  const ConflictSet c = conflict_set(u);
  for (const auto& [p, q] : c.pairs()) {
    CHECK(p < q);
    CHECK(c.contains(q, p));
  }
  CHECK(std::is_sorted(c.pairs().begin(), c.pairs().end()));
}

TEST_CASE("invalid graphs and instances are rejected") {
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 1}, {0, 1}}), InvalidInput);
  CHECK_THROWS_AS(DirectedGraph(2, {{0, 2}}), InvalidInput);

  Instance inst;
  inst.graph = DirectedGraph(3, {{0, 1}, {1, 2}});
  inst.cost = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(inst.validate(), InvalidInput);  // k = 0
  inst.pairs = {{0, 0}};
  CHECK_THROWS_AS(inst.validate(), InvalidInput);
  inst.pairs = {{0, 5}};
  CHECK_THROWS_AS(inst.validate(), InvalidInput);
  inst.pairs = {{0, 2}, {0, 1}};
  inst.cost = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(inst.validate(), InvalidInput);  // repeated source
  inst.pairs = {{0, 2}};
  inst.cost = Eigen::MatrixXd::Zero(2, 2);
  inst.cost(0, 1) = 1.0;
  CHECK_THROWS_AS(inst.validate(), InvalidInput);  // asymmetric
  CHECK(symmetrize(inst.cost) == doctest::Approx(1.0));
  CHECK(inst.cost(0, 1) == 0.5);
  CHECK_NOTHROW(inst.validate());
}
