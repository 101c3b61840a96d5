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


#include "bench.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace qkvdp {
namespace {

int bin_index(int arcs) { return std::clamp(arcs / 100, 0, 8); }

std::string bin_label(int idx) {
  if (idx >= 8) return ">=800";
  const int lo = idx == 0 ? 1 : idx * 100;
  return "[" + std::to_string(lo) + "," + std::to_string((idx + 1) * 100) + ")";
}

}  // namespace

std::string arc_bin(int arcs) { return bin_label(bin_index(arcs)); }

std::vector<BinSummary> aggregate_runs(std::span<const RunRecord> runs) {
  std::map<int, BinSummary> bins;
  for (const auto& r : runs) {
    BinSummary& b = bins[bin_index(r.arcs)];
    ++b.instances;
    if (r.status == "optimal") ++b.solved;
    b.avg_gap += r.gap;
    b.avg_time_s += r.time_s;
  }
  std::vector<BinSummary> out;
  for (auto& [idx, b] : bins) {
    b.bin = bin_label(idx);
    b.avg_gap /= b.instances;
    b.avg_time_s /= b.instances;
    out.push_back(b);
  }
  return out;
}

void write_bin_table(std::ostream& os, std::span<const BinSummary> bins) {
  os << "bin,instances,solved_to_opt,avg_gap,avg_time_s\n";
  for (const auto& b : bins)
    os << '"' << b.bin << "\"," << b.instances << ',' << b.solved << ',' << b.avg_gap << ','
       << b.avg_time_s << '\n';
}

}  // namespace qkvdp
