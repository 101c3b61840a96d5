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


#ifndef QKVDP_BENCH_HPP
#define QKVDP_BENCH_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qkvdp {

/// One solved instance of a benchmark run.
struct RunRecord {
  std::string instance;
  int arcs = 0;  // |E| of the solved (reduced) model
  std::string status;
  double gap = 0.0;  // may be +inf
  double time_s = 0.0;
  long nodes = 0;
};

/// "[1,100)", "[100,200)", ..., "[700,800)", ">=800". Zero arcs fall in the
/// first bin.
std::string arc_bin(int arcs);

struct BinSummary {
  std::string bin;
  int instances = 0;
  int solved = 0;  // status "optimal"
  double avg_gap = 0.0;
  double avg_time_s = 0.0;
};

/// Averages over every run in a bin, timeouts included; bins in increasing
/// order, empty bins omitted.
std::vector<BinSummary> aggregate_runs(std::span<const RunRecord> runs);

/// CSV "bin,instances,solved_to_opt,avg_gap,avg_time_s".
void write_bin_table(std::ostream& os, std::span<const BinSummary> bins);

}  // namespace qkvdp

#endif  // QKVDP_BENCH_HPP
