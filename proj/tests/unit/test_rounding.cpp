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

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "reduction.hpp"
#include "rng.hpp"
#include "rounding.hpp"
#include "sdp_model.hpp"

using namespace qkvdp;

namespace {

bool consistent(const std::vector<int>& x, const NodeFixings& f) {
  for (int p = 0; p < f.size(); ++p)
    if (!f.is_free(p) && f.value[p] != x[p]) return false;
  return true;
}

double best_weight(const Eigen::VectorXd& w, const testing::BruteForce& all, const NodeFixings& f) {
  double best = -1e300;
  for (const auto& x : all.solutions) {
    if (!consistent(x, f)) continue;
    double s = 0;
    for (std::size_t p = 0; p < x.size(); ++p) s += w(p) * x[p];
    best = std::max(best, s);
  }
  return best;
}

std::vector<FlowModel> models() {
  std::vector<FlowModel> out;
  out.push_back(reduce(testing::diamond_instance(1)).reduced.model);
  out.push_back(to_flow_model(disjoint_union(testing::diamond_instance(1))));
  for (std::uint64_t seed = 1; out.size() < 12 && seed < 200; ++seed) {
    const Instance inst = testing::random_instance(6, 0.3, 2, seed);
    try {
      const Reduction red = reduce(inst);
      if (red.reduced.model.num_arcs() > 0 && red.reduced.model.num_arcs() <= 20)
        out.push_back(red.reduced.model);
    } catch (const Infeasible&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rounding is exact over path solutions") {
  Rng rng(17);
  for (const FlowModel& m : models()) {
    const auto all = testing::brute_force_min(m, true);
    REQUIRE(all);
    const NodeFixings free(m.num_arcs());
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd w(m.num_arcs());
      for (int p = 0; p < m.num_arcs(); ++p) w(p) = rng.uniform(-1, 1);
      const auto r = upper_bound(w, m, free);
      REQUIRE(r);
      CHECK_FALSE(r->exhausted);
      CHECK(r->weight == doctest::Approx(best_weight(w, *all, free)));
      CHECK(testing::raw_feasible(m, r->x, true));
      CHECK(r->value == doctest::Approx(m.objective(std::span<const int>(r->x))));
    }
  }
}

TEST_CASE("rounding honors fixings") {
  Rng rng(5);
  for (const FlowModel& m : models()) {
    const auto all = testing::brute_force_min(m, true);
    REQUIRE(all);
    const std::vector<int>& x0 = all->solutions.front();
    for (int p = 0; p < m.num_arcs(); ++p) {
      NodeFixings f(m.num_arcs());
      f.value[p] = static_cast<signed char>(x0[p]);
      Eigen::VectorXd w(m.num_arcs());
      for (int e = 0; e < m.num_arcs(); ++e) w(e) = rng.uniform(0, 1);
      const auto r = upper_bound(w, m, f);
      REQUIRE(r);
      CHECK(r->x[p] == x0[p]);
      CHECK(r->weight == doctest::Approx(best_weight(w, *all, f)));
    }
  }
}

TEST_CASE("no path solution gives nullopt") {
  const FlowModel m = reduce(testing::diamond_instance()).reduced.model;
  NodeFixings f(m.num_arcs());
  for (int p = 0; p < m.num_arcs(); ++p) f.value[p] = 0;
  CHECK_FALSE(upper_bound(Eigen::VectorXd::Ones(m.num_arcs()), m, f));
}

TEST_CASE("budget exhaustion keeps the best so far") {
  const FlowModel m = to_flow_model(disjoint_union(testing::diamond_instance()));
  const auto r = upper_bound(Eigen::VectorXd::Ones(m.num_arcs()), m, NodeFixings(m.num_arcs()), 1);
  if (r) {
    CHECK(testing::raw_feasible(m, r->x, true));
  }
}

TEST_CASE("propagation never removes a feasible completion") {
  Rng rng(9);
  for (const FlowModel& m : models()) {
    const auto all = testing::brute_force_min(m, false);
    REQUIRE(all);
    for (int t = 0; t < 30; ++t) {
      NodeFixings f(m.num_arcs());
      const int p = static_cast<int>(rng.below(m.num_arcs()));
      f.value[p] = static_cast<signed char>(rng.below(2));
      NodeFixings g = f;
      const bool ok = propagate_fixings(m, g);
      long before = 0, after = 0;
      for (const auto& x : all->solutions) {
        before += consistent(x, f);
        if (ok) after += consistent(x, g);
      }
      CHECK(after == before);
      if (ok) CHECK(g.conflict_consistent(m.conflicts));
    }
  }
}

TEST_CASE("a binary path-feasible diagonal rounds to itself") {
  for (const FlowModel& m : models()) {
    const auto all = testing::brute_force_min(m, true);
    REQUIRE(all);
    for (const auto& x : all->solutions) {
      const auto r = round_lifted(lift_solution(x), m, NodeFixings(m.num_arcs()));
      REQUIRE(r);
      CHECK(r->x == x);
    }
  }
}
