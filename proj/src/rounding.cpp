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


#include "rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qkvdp {
namespace {

class PathSearch {
 public:
  PathSearch(const Eigen::VectorXd& w, const FlowModel& model, const NodeFixings& fixings,
             long budget)
      : w_(w), m_(model), fix_(fixings), budget_(budget) {
    const int n = model.num_arcs();
    const int rows = model.num_rows();
    chosen_.assign(n, 0);
    blocked_.assign(n, 0);
    kind_.assign(rows, 0);
    used_.assign(rows, 0);
    for (int r = 0; r < rows; ++r) {
      const long b = std::lround(model.supply(r));
      if (b > 1 || b < -1) {
        bad_ = true;
      } else if (b == 1) {
        kind_[r] = 1;
        sources_.push_back(r);
      } else if (b == -1) {
        kind_[r] = -1;
      }
    }
    sorted_out_.resize(rows);
    for (int r = 0; r < rows; ++r) {
      sorted_out_[r] = model.out_arcs[r];
      std::stable_sort(sorted_out_[r].begin(), sorted_out_[r].end(),
                       [&](ArcId a, ArcId b) { return w_(a) > w_(b); });
    }
    for (int e = 0; e < n; ++e) {
      if (fix_.value[e] == 1) ++forced_total_;
      if (fix_.value[e] != 0) avail_pos_ += std::max(0.0, w_(e));
    }
  }

  std::optional<Rounding> run(bool* exhausted) {
    if (exhausted) *exhausted = false;
    if (bad_ || !fix_.conflict_consistent(m_.conflicts)) return std::nullopt;
    route(0);
    if (exhausted) *exhausted = expansions_ > budget_;
    if (!found_) return std::nullopt;
    Rounding out;
    out.x = best_x_;
    out.weight = best_w_;
    out.value = m_.objective(std::span<const int>(out.x));
    out.exhausted = expansions_ > budget_;
    return out;
  }

 private:
  bool available(ArcId e) const { return fix_.value[e] != 0 && blocked_[e] == 0 && !chosen_[e]; }

  void choose(ArcId e) {
    if (fix_.value[e] != 0 && blocked_[e] == 0) avail_pos_ -= std::max(0.0, w_(e));
    chosen_[e] = 1;
    current_ += w_(e);
    if (fix_.value[e] == 1) ++forced_used_;
    for (ArcId q : m_.conflicts.neighbors(e)) {
      if (blocked_[q]++ == 0 && !chosen_[q] && fix_.value[q] != 0) {
        avail_pos_ -= std::max(0.0, w_(q));
        if (fix_.value[q] == 1) ++forced_dead_;
      }
    }
  }

  void unchoose(ArcId e) {
    for (ArcId q : m_.conflicts.neighbors(e)) {
      if (--blocked_[q] == 0 && !chosen_[q] && fix_.value[q] != 0) {
        avail_pos_ += std::max(0.0, w_(q));
        if (fix_.value[q] == 1) --forced_dead_;
      }
    }
    if (fix_.value[e] == 1) --forced_used_;
    current_ -= w_(e);
    chosen_[e] = 0;
    if (fix_.value[e] != 0 && blocked_[e] == 0) avail_pos_ += std::max(0.0, w_(e));
  }

  bool hopeless() const {
    if (forced_dead_ > 0) return true;
    return found_ && current_ + avail_pos_ <= best_w_ + 1e-12;
  }

  void route(std::size_t si) {
    if (expansions_ > budget_ || hopeless()) return;
    if (si == sources_.size()) {
      if (forced_used_ != forced_total_) return;
      if (!found_ || current_ > best_w_ + 1e-12) {
        found_ = true;
        best_w_ = current_;
        best_x_.assign(chosen_.begin(), chosen_.end());
      }
      return;
    }
    extend(sources_[si], sources_[si], si);
  }

  void extend(int row, int start, std::size_t si) {
    if (++expansions_ > budget_ || hopeless()) return;
    const int copy = m_.vertices[start].copy;
    for (ArcId e : sorted_out_[row]) {
      if (!available(e)) continue;
      const int head = m_.head_row[e];
      if (kind_[head] == 1) continue;
      if (kind_[head] == -1) {
        if (used_[head] || m_.vertices[head].copy != copy) continue;
        choose(e);
        used_[head] = 1;
        route(si + 1);
        used_[head] = 0;
        unchoose(e);
      } else {
        choose(e);
        extend(head, start, si);
        unchoose(e);
      }
      if (expansions_ > budget_) return;
    }
  }

  const Eigen::VectorXd& w_;
  const FlowModel& m_;
  const NodeFixings& fix_;
  long budget_;
  long expansions_ = 0;
  bool bad_ = false;
  std::vector<char> chosen_;
  std::vector<int> blocked_;
  std::vector<int> kind_;  // 1 supply, -1 demand, 0 transit
  std::vector<char> used_;
  std::vector<int> sources_;
  std::vector<std::vector<ArcId>> sorted_out_;
  int forced_total_ = 0;
  int forced_used_ = 0;
  int forced_dead_ = 0;
  double avail_pos_ = 0.0;
  double current_ = 0.0;
  bool found_ = false;
  double best_w_ = 0.0;
  std::vector<int> best_x_;
};

}  // namespace

std::optional<Rounding> upper_bound(const Eigen::VectorXd& w, const FlowModel& model,
                                    const NodeFixings& fixings, long node_budget,
                                    bool* exhausted) {
  if (w.size() != model.num_arcs() || fixings.size() != model.num_arcs())
    throw InvalidInput("rounding weights or fixings do not match the arc count");
  return PathSearch(w, model, fixings, node_budget).run(exhausted);
}

std::optional<Rounding> round_lifted(const Eigen::MatrixXd& y, const FlowModel& model,
                                     const NodeFixings& fixings, long node_budget,
                                     bool* exhausted) {
  const int n = model.num_arcs();
  if (y.rows() != n + 1 || y.cols() != n + 1)
    throw InvalidInput("lifted matrix does not match the arc count");
  return upper_bound(y.diagonal().tail(n), model, fixings, node_budget, exhausted);
}

}  // namespace qkvdp
