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

#include <limits>
#include <sstream>

#include "bench.hpp"

using namespace qkvdp;

TEST_CASE("arc bins") {
  CHECK(arc_bin(0) == "[1,100)");
  CHECK(arc_bin(1) == "[1,100)");
  CHECK(arc_bin(99) == "[1,100)");
  CHECK(arc_bin(100) == "[100,200)");
  CHECK(arc_bin(799) == "[700,800)");
  CHECK(arc_bin(800) == ">=800");
  CHECK(arc_bin(5000) == ">=800");
}

TEST_CASE("aggregation counts timeouts in averages") {
  const std::vector<RunRecord> runs{
      {"a", 50, "optimal", 0.0, 1.0, 3},
      {"b", 60, "time_limit", 0.2, 9.0, 40},
      {"c", 850, "optimal", 0.0, 4.0, 1},
      {"d", 150, "optimal", 0.0, 2.0, 5},
  };
  const auto bins = aggregate_runs(runs);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].bin == "[1,100)");
  CHECK(bins[0].instances == 2);
  CHECK(bins[0].solved == 1);
  CHECK(bins[0].avg_gap == doctest::Approx(0.1));
  CHECK(bins[0].avg_time_s == doctest::Approx(5.0));
  CHECK(bins[1].bin == "[100,200)");
  CHECK(bins[2].bin == ">=800");

  std::ostringstream os;
  write_bin_table(os, bins);
  const std::string csv = os.str();
  CHECK(csv.rfind("bin,instances,solved_to_opt,avg_gap,avg_time_s\n", 0) == 0);
  CHECK(csv.find("\"[1,100)\",2,1,0.1,5\n") != std::string::npos);
}

TEST_CASE("empty input gives an empty table") {
  CHECK(aggregate_runs(std::vector<RunRecord>{}).empty());
}
