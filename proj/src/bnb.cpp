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


#include "bnb.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <memory>
#include <mutex>
#include <queue>
#include <set>
#include <thread>

namespace qkvdp {

const char* to_string(BnbStatus s) {
  switch (s) {
    case BnbStatus::optimal: return "optimal";
    case BnbStatus::time_limit: return "time_limit";
    case BnbStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

double gap(double f_ub, double f_lb) {
  if (std::isinf(f_ub) || std::isinf(f_lb)) {
    if (f_ub == f_lb) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return std::abs(f_ub - f_lb) / std::max(std::abs(f_ub), 1e-8);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  NodeFixings fix;
  double parent_bound = -std::numeric_limits<double>::infinity();
  std::shared_ptr<const AdmmState> warm;
  int depth = 0;
  long seq = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.parent_bound != b.parent_bound) return a.parent_bound > b.parent_bound;
    return a.seq > b.seq;
  }
};

class Driver {
 public:
  Driver(const FlowModel& model, const SdpRelaxation& sdp, const BnbParams& params)
      : model_(model), sdp_(sdp), params_(params), start_(Clock::now()) {}

  BnbResult run() {
    if (model_.num_arcs() != sdp_.num_arcs())
      throw InvalidInput("model and relaxation sizes differ");
    params_.admm.validate();
    Node root;
    root.fix = NodeFixings(model_.num_arcs());
    if (propagate_fixings(model_, root.fix)) open_.push(std::move(root));

    const int workers = std::max(1, params_.threads);
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int i = 0; i < workers; ++i) pool.emplace_back([this] { work(); });
    }
    if (error_) std::rethrow_exception(error_);

    BnbResult out;
    out.incumbent = incumbent_;
    out.incumbent_value = incumbent_value_;
    out.nodes = nodes_;
    out.time_s = elapsed();
    if (exhausted_) {
      out.status = incumbent_.empty() && std::isinf(incumbent_value_) ? BnbStatus::infeasible
                                                                      : BnbStatus::optimal;
      out.lower_bound = incumbent_value_;
      if (out.status == BnbStatus::infeasible)
        out.lower_bound = std::numeric_limits<double>::infinity();
    } else {
      out.lower_bound = global_lb_;
      out.status = gap_closed() ? BnbStatus::optimal : BnbStatus::time_limit;
    }
    out.gap = out.status == BnbStatus::infeasible ? 0.0 : gap(out.incumbent_value, out.lower_bound);
    return out;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  bool gap_closed() const {
    return std::isfinite(incumbent_value_) && gap(incumbent_value_, global_lb_) <= params_.gap_tol;
  }

  // Requires the lock.
  void refresh_lower_bound() {
    double lb = std::numeric_limits<double>::infinity();
    if (!open_.empty()) lb = open_.top().parent_bound;
    if (!active_bounds_.empty()) lb = std::min(lb, *active_bounds_.begin());
    lb = std::min(lb, incumbent_value_);
    global_lb_ = std::max(global_lb_, lb);
  }

  // Requires the lock.
  void offer(const std::vector<int>& x, double value) {
    if (!(value < incumbent_value_)) return;
    if (!check_solution(model_, x).subtour_relaxed_feasible()) return;
    incumbent_value_ = value;
    incumbent_ = x;
  }

  void work() {
    std::unique_lock lk(mu_);
    while (true) {
      cv_.wait(lk, [&] { return stop_ || !open_.empty() || active_ == 0; });
      if (stop_) break;
      if (open_.empty()) {
        exhausted_ = true;
        stop_ = true;
        cv_.notify_all();
        break;
      }
      Node node = open_.top();
      open_.pop();
      if (node.parent_bound >= incumbent_value_ - params_.prune_tol) {
        refresh_lower_bound();
        continue;
      }
      ++active_;
      auto bound_it = active_bounds_.insert(node.parent_bound);
      const double cutoff = incumbent_value_ - params_.prune_tol;
      const long id = nodes_++;
      lk.unlock();

      std::vector<Node> children;
      try {
        children = process(node, id, cutoff, lk);
      } catch (...) {
        if (!lk.owns_lock()) lk.lock();
        error_ = std::current_exception();
        stop_ = true;
      }
      if (!lk.owns_lock()) lk.lock();
      --active_;
      active_bounds_.erase(bound_it);
      for (Node& c : children) {
        c.seq = next_seq_++;
        open_.push(std::move(c));
      }
      refresh_lower_bound();
      if (!stop_) {
        if (open_.empty() && active_ == 0) {
          exhausted_ = true;
          stop_ = true;
        } else if (gap_closed()) {
          stop_ = true;
        } else if (elapsed() >= params_.time_limit) {
          stop_ = true;
        }
      }
      cv_.notify_all();
    }
  }

  // Called without the lock; returns with or without it (the caller checks).
  std::vector<Node> process(const Node& node, long id, double cutoff,
                            std::unique_lock<std::mutex>& lk) {
    NodeEvent ev;
    ev.id = id;
    ev.depth = node.depth;
    ev.fixings = &node.fix;
    if (node.fix.all_fixed()) {
      const std::vector<int> x = node.fix.assignment();
      const bool ok = check_solution(model_, x).subtour_relaxed_feasible();
      const double val = ok ? model_.objective(std::span<const int>(x))
                            : std::numeric_limits<double>::infinity();
      ev.leaf = true;
      ev.lower_bound = val;
      if (ok) {
        ev.upper = val;
        ev.x = &x;
      }
      lk.lock();
      if (ok) offer(x, val);
      if (params_.observer) params_.observer(ev);
      return {};
    }

    const AdmmState* warm = params_.warm_start && node.warm ? node.warm.get() : nullptr;
    AdmmResult res = solve_admm(sdp_, model_, node.fix, params_.admm, warm, cutoff);
    const double nb = std::max(res.bounds.lower, node.parent_bound);
    ev.lower_bound = res.bounds.lower;
    ev.upper = res.bounds.upper;
    if (res.bounds.upper) ev.x = &res.bounds.x;

    std::vector<Node> children;
    lk.lock();
    if (res.bounds.upper) offer(res.bounds.x, *res.bounds.upper);
    if (params_.observer) params_.observer(ev);
    if (res.status == AdmmStatus::infeasible_node || nb >= incumbent_value_ - params_.prune_tol)
      return children;
    lk.unlock();

    int branch = -1;
    double score = -1.0;
    for (int p = 0; p < node.fix.size(); ++p) {
      if (!node.fix.is_free(p)) continue;
      const double t = res.state.y(p + 1, p + 1);
      const double s = std::min(t, 1.0 - t);
      if (s > score) {
        score = s;
        branch = p;
      }
    }
    auto state = std::make_shared<const AdmmState>(AdmmState{
        res.state.r, res.state.y, res.state.z, res.state.beta, res.state.iterations, {}});
    for (int v : {1, 0}) {
      Node child;
      child.fix = node.fix;
      child.fix.value[branch] = static_cast<signed char>(v);
      if (!propagate_fixings(model_, child.fix)) continue;
      child.parent_bound = nb;
      child.warm = state;
      child.depth = node.depth + 1;
      children.push_back(std::move(child));
    }
    return children;
  }

  const FlowModel& model_;
  const SdpRelaxation& sdp_;
  BnbParams params_;
  Clock::time_point start_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::multiset<double> active_bounds_;
  int active_ = 0;
  long next_seq_ = 1;
  long nodes_ = 0;
  bool stop_ = false;
  bool exhausted_ = false;
  std::exception_ptr error_;
  std::vector<int> incumbent_;
  double incumbent_value_ = std::numeric_limits<double>::infinity();
  double global_lb_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

BnbResult solve_bnb(const FlowModel& model, const SdpRelaxation& sdp, const BnbParams& params) {
  return Driver(model, sdp, params).run();
}

}  // namespace qkvdp
