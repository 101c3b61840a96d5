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


#include "fixings.hpp"

#include <algorithm>
#include <cmath>

namespace qkvdp {

int NodeFixings::num_free() const {
  return static_cast<int>(std::count(value.begin(), value.end(), static_cast<signed char>(-1)));
}

bool NodeFixings::conflict_consistent(const ConflictSet& conflicts) const {
  for (const auto& [p, q] : conflicts.pairs())
    if (value[p] == 1 && value[q] == 1) return false;
  return true;
}

std::vector<int> NodeFixings::assignment() const {
  std::vector<int> x(value.size());
  for (std::size_t p = 0; p < value.size(); ++p) {
    if (value[p] < 0) throw InvalidInput("assignment() needs every arc fixed");
    x[p] = value[p];
  }
  return x;
}

namespace {

struct Side {
  int ones = 0;
  int free = 0;
  int last_free = -1;
};

Side tally(const std::vector<ArcId>& arcs, const NodeFixings& f) {
  Side s;
  for (ArcId e : arcs) {
    if (f.value[e] == 1) {
      ++s.ones;
    } else if (f.value[e] < 0) {
      ++s.free;
      s.last_free = e;
    }
  }
  return s;
}

// Forces the arc sum of one side of a row to `target`. Returns false on a
// contradiction; sets `changed` when something was fixed.
bool enforce(const std::vector<ArcId>& arcs, const Side& s, int target, NodeFixings& f,
             bool& changed) {
  if (s.ones > target) return false;
  if (s.ones == target) {
    if (s.free > 0) {
      for (ArcId e : arcs)
        if (f.value[e] < 0) f.value[e] = 0;
      changed = true;
    }
    return true;
  }
  // target 1, no arc at one yet
  if (s.free == 0) return false;
  if (s.free == 1) {
    f.value[s.last_free] = 1;
    changed = true;
  }
  return true;
}

}  // namespace

bool propagate_fixings(const FlowModel& model, NodeFixings& f) {
  if (f.size() != model.num_arcs()) throw InvalidInput("fixings do not match the arc count");
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < f.size(); ++p) {
      if (f.value[p] != 1) continue;
      for (ArcId q : model.conflicts.neighbors(p)) {
        if (f.value[q] == 1) return false;
        if (f.value[q] < 0) {
          f.value[q] = 0;
          changed = true;
        }
      }
    }
    for (int r = 0; r < model.num_rows(); ++r) {
      const Side out = tally(model.out_arcs[r], f);
      const Side in = tally(model.in_arcs[r], f);
      if (out.ones > 1 || in.ones > 1) return false;
      const long b = std::lround(model.supply(r));
      int need_out = -1;
      int need_in = -1;
      if (b == 1) {
        need_out = 1;
        need_in = 0;
      } else if (b == -1) {
        need_out = 0;
        need_in = 1;
      } else if (b == 0) {
        if (in.ones == 1) need_out = 1;
        if (out.ones == 1) need_in = 1;
        if (in.ones == 0 && in.free == 0) need_out = 0;
        if (out.ones == 0 && out.free == 0) need_in = 0;
      } else {
        return false;
      }
      if (need_out >= 0 && !enforce(model.out_arcs[r], out, need_out, f, changed)) return false;
      if (need_in >= 0) {
        const Side in2 = tally(model.in_arcs[r], f);
        if (!enforce(model.in_arcs[r], in2, need_in, f, changed)) return false;
      }
    }
  }
  return true;
}

}  // namespace qkvdp
