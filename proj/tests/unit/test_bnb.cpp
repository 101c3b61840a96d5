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

#include "bnb.hpp"
#include "brute_force.hpp"
#include "fixtures.hpp"
#include "instance_gen.hpp"
#include "reduction.hpp"

using namespace qkvdp;

TEST_CASE("gap") {
  CHECK(gap(10, 9) == doctest::Approx(0.1));
  CHECK(gap(-10, -11) == doctest::Approx(0.1));
  CHECK(gap(0, -1e-9) == doctest::Approx(0.1));
  CHECK(gap(5, 5) == 0.0);
}

TEST_CASE("diamond solves to the brute-force optimum") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Reduction red = reduce(testing::diamond_instance(seed));
    const FlowModel& m = red.reduced.model;
    const auto ref = testing::brute_force_min(m, false);
    REQUIRE(ref);
    const BnbResult res = solve_bnb(m, build_sdp(m));
    CHECK(res.status == BnbStatus::optimal);
    CHECK(res.incumbent_value == doctest::Approx(ref->value).epsilon(1e-6));
    CHECK(testing::raw_feasible(m, res.incumbent, false));
    CHECK(res.lower_bound <= res.incumbent_value + 1e-9);
    CHECK(res.nodes >= 1);
  }
}

TEST_CASE("node bounds are valid and incumbents are feasible") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig cfg;
    cfg.num_vertices = seed % 2 ? 12 : 9;
    cfg.seed = seed;
    const Reduction red = reduce(generate(cfg).instance);
    const FlowModel& m = red.reduced.model;
    if (m.num_arcs() == 0 || m.num_arcs() > 20) continue;
    ++checked;
    const auto ref = testing::brute_force_min(m, false);
    BnbParams params;
    int events = 0;
    params.observer = [&](const NodeEvent& ev) {
      ++events;
      const auto node = testing::brute_force_min(m, false, ev.fixings);
      if (node) CHECK(ev.lower_bound <= node->value + 1e-6);
      if (ev.x) CHECK(testing::raw_feasible(m, *ev.x, false));
    };
    const BnbResult res = solve_bnb(m, build_sdp(m), params);
    CHECK(events == res.nodes);
    if (ref) {
      CHECK(res.status == BnbStatus::optimal);
      CHECK(res.incumbent_value == doctest::Approx(ref->value).epsilon(1e-6));
    } else {
      CHECK(res.status == BnbStatus::infeasible);
    }
  }
  CHECK(checked >= 15);
}

TEST_CASE("threads give the same optimum") {
  const Reduction red = reduce(testing::diamond_instance(7));
  const FlowModel& m = red.reduced.model;
  const SdpRelaxation sdp = build_sdp(m);
  BnbParams one, four;
  four.threads = 4;
  const BnbResult a = solve_bnb(m, sdp, one);
  const BnbResult b = solve_bnb(m, sdp, four);
  CHECK(a.status == BnbStatus::optimal);
  CHECK(b.status == BnbStatus::optimal);
  CHECK(a.incumbent_value == doctest::Approx(b.incumbent_value).epsilon(1e-6));
}

TEST_CASE("subtour-relaxed optimum can use a disjoint cycle") {
  const Instance inst = testing::negative_cycle_instance();
  const FlowModel m = to_flow_model(disjoint_union(inst));
  const BnbResult res = solve_bnb(m, build_sdp(m));
  CHECK(res.status == BnbStatus::optimal);
  // path s-a-t plus cycle c-d-c: 1 - 20
  CHECK(res.incumbent_value == doctest::Approx(-19.0).epsilon(1e-6));
}

TEST_CASE("zero time limit stops after the root") {
  const FlowModel m = to_flow_model(disjoint_union(testing::diamond_instance(3)));
  BnbParams params;
  params.time_limit = 0.0;
  const BnbResult res = solve_bnb(m, build_sdp(m), params);
  CHECK(res.nodes == 1);
  CHECK((res.status == BnbStatus::time_limit || res.status == BnbStatus::optimal));
}

TEST_CASE("warm starts save iterations") {
  int better = 0, total = 0;
  for (std::uint64_t seed = 1; total < 20 && seed <= 10; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    const Reduction red = reduce(generate(cfg).instance);
    const FlowModel& m = red.reduced.model;
    if (m.num_arcs() < 20) continue;
    const SdpRelaxation sdp = build_sdp(m);
    const AdmmParams params = BnbParams::default_node_admm();
    const AdmmResult root = solve_admm(sdp, m, NodeFixings(m.num_arcs()), params);
    std::vector<std::pair<NodeFixings, AdmmState>> level{{NodeFixings(m.num_arcs()), root.state}};
    for (int depth = 0; depth < 2 && total < 20; ++depth) {
      std::vector<std::pair<NodeFixings, AdmmState>> next;
      for (const auto& [fx, state] : level) {
        int branch = -1;
        double score = -1;
        for (int p = 0; p < fx.size(); ++p)
          if (fx.is_free(p) && std::min(state.y(p + 1, p + 1), 1 - state.y(p + 1, p + 1)) > score) {
            score = std::min(state.y(p + 1, p + 1), 1 - state.y(p + 1, p + 1));
            branch = p;
          }
        if (branch < 0) continue;
        for (int v : {1, 0}) {
          NodeFixings child = fx;
          child.value[branch] = static_cast<signed char>(v);
          if (!propagate_fixings(m, child) || total >= 20) continue;
          const AdmmResult cold = solve_admm(sdp, m, child, params);
          const AdmmResult warm = solve_admm(sdp, m, child, params, &state);
          ++total;
          better += warm.state.iterations < cold.state.iterations;
          next.emplace_back(child, warm.state);
        }
      }
      level = std::move(next);
    }
  }
  MESSAGE("warm start used fewer iterations on " << better << " of " << total << " nodes");
  CHECK(total == 20);
  CHECK(better >= 14);
}
