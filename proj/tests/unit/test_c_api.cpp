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

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>
#include <qkvdp/qkvdp.h>

namespace {

// The two-pair diamond graph with a few nonzero costs.
const char* kDiamond = R"({"num_vertices": 6,
  "arcs": [[0,4],[0,5],[2,4],[2,5],[4,1],[5,1],[4,3],[5,3]],
  "pairs": [[0,1],[2,3]],
  "Q": {"format": "coo", "n": 16, "entries": [[0,0,1.5],[8,9,-2],[9,8,-2]]}})";

std::string take(char* s) {
  std::string out = s ? s : "";
  qkvdp_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(qkvdp_version()).size() > 0);
  qkvdp_instance* inst = nullptr;
  CHECK(qkvdp_instance_from_json("{not json", &inst) == QKVDP_ERR_INVALID_ARGUMENT);
  CHECK(inst == nullptr);
  CHECK(std::string(qkvdp_last_error()).size() > 0);
  CHECK(qkvdp_instance_load("/nonexistent/file.json", &inst) == QKVDP_ERR_IO);
  CHECK(qkvdp_instance_from_json(kDiamond, nullptr) == QKVDP_ERR_INVALID_ARGUMENT);
  qkvdp_instance_free(nullptr);
  qkvdp_model_free(nullptr);
  qkvdp_result_free(nullptr);
}

TEST_CASE("reduce, solve, certify") {
  qkvdp_instance* inst = nullptr;
  REQUIRE(qkvdp_instance_from_json(kDiamond, &inst) == QKVDP_OK);
  CHECK(qkvdp_instance_num_arcs(inst) == 8);
  CHECK(qkvdp_instance_num_pairs(inst) == 2);

  qkvdp_model* full = nullptr;
  REQUIRE(qkvdp_model_unreduced(inst, &full) == QKVDP_OK);
  int r = 0;
  REQUIRE(qkvdp_model_face_dim(full, &r) == QKVDP_OK);
  CHECK(r == 7);

  qkvdp_model* model = nullptr;
  REQUIRE(qkvdp_reduce(inst, 2, &model) == QKVDP_OK);
  CHECK(qkvdp_model_num_arcs(model) == 8);
  REQUIRE(qkvdp_model_face_dim(model, &r) == QKVDP_OK);
  CHECK(r == 3);
  qkvdp_reduction_stats st;
  REQUIRE(qkvdp_model_stats(model, &st) == QKVDP_OK);
  CHECK(st.initial_arcs == 16);
  CHECK(st.remaining_arcs == 8);

  char* csv = nullptr;
  REQUIRE(qkvdp_stats_csv(&st, 1, 0, &csv) == QKVDP_OK);
  CHECK(take(csv).rfind("k,m_v,initial_arcs,remaining_arcs,time_s\n2,6,16,8,", 0) == 0);

  char* mj = nullptr;
  REQUIRE(qkvdp_model_to_json(model, &mj) == QKVDP_OK);
  CHECK(take(mj).find("reduced_model") != std::string::npos);

  qkvdp_solve_options opts;
  qkvdp_solve_options_default(&opts);
  qkvdp_result* res = nullptr;
  REQUIRE(qkvdp_solve(model, &opts, &res) == QKVDP_OK);
  qkvdp_result_summary sum;
  REQUIRE(qkvdp_result_summary_get(res, &sum) == QKVDP_OK);
  CHECK(sum.status == QKVDP_SOLVE_OPTIMAL);
  // the only nonzero costs are 1.5 on arc 0 and -4 between arcs 8 and 9,
  // which cannot both be used; best is to avoid arc 0: value 0
  CHECK(std::abs(sum.incumbent_value) < 1e-6);
  std::vector<int> x(16);
  REQUIRE(qkvdp_result_incumbent(res, x.data(), x.size()) == QKVDP_OK);
  int used = 0;
  for (int v : x) used += v;
  CHECK(used == 4);
  CHECK(x[0] == 0);
  CHECK(qkvdp_result_incumbent(res, x.data(), 3) == QKVDP_ERR_INVALID_ARGUMENT);
  char* rj = nullptr;
  REQUIRE(qkvdp_result_to_json(res, &rj) == QKVDP_OK);
  CHECK(nlohmann::json::parse(take(rj))["status"] == "optimal");

  char* report = nullptr;
  REQUIRE(qkvdp_certify(model, nullptr, 0, &report) == QKVDP_OK);
  CHECK(nlohmann::json::parse(take(report))["valid"] == true);
  REQUIRE(qkvdp_certify(model, "[[0.5,-0.5,0],[-0.5,0.5,0],[0,0,0]]", 1, &report) == QKVDP_OK);
  CHECK(nlohmann::json::parse(take(report))["valid"] == true);
  CHECK(qkvdp_certify(model, "[[1,0],[0,1]]", 1, &report) == QKVDP_ERR_INVALID_ARGUMENT);

  qkvdp_result_free(res);
  qkvdp_model_free(model);
  qkvdp_model_free(full);
  qkvdp_instance_free(inst);
}

TEST_CASE("generation is reproducible through the API") {
  qkvdp_gen_config cfg;
  qkvdp_gen_config_default(&cfg);
  cfg.num_vertices = 12;
  cfg.seed = 3;
  qkvdp_instance *a = nullptr, *b = nullptr;
  REQUIRE(qkvdp_instance_generate(&cfg, &a) == QKVDP_OK);
  REQUIRE(qkvdp_instance_generate(&cfg, &b) == QKVDP_OK);
  char *ja = nullptr, *jb = nullptr;
  REQUIRE(qkvdp_instance_to_json(a, &ja) == QKVDP_OK);
  REQUIRE(qkvdp_instance_to_json(b, &jb) == QKVDP_OK);
  const std::string sa = take(ja);
  CHECK(sa == take(jb));
  CHECK(sa.find("provenance") != std::string::npos);
  qkvdp_instance_free(a);
  qkvdp_instance_free(b);
  cfg.num_vertices = 13;
  CHECK(qkvdp_instance_generate(&cfg, &a) == QKVDP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("infeasible instances") {
  qkvdp_instance* inst = nullptr;
  REQUIRE(qkvdp_instance_from_json(R"({"num_vertices": 3, "arcs": [[0,1]], "pairs": [[0,2]],
      "Q": {"format": "coo", "entries": []}})", &inst) == QKVDP_OK);
  qkvdp_model* model = nullptr;
  CHECK(qkvdp_reduce(inst, 1, &model) == QKVDP_ERR_INFEASIBLE);
  qkvdp_instance_free(inst);
}
