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


#include "admm.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "numerics.hpp"

namespace qkvdp {

void AdmmParams::validate() const {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be positive");
  if (!(rho > 0.0 && rho < golden)) throw InvalidInput("rho must lie in (0, (1+sqrt 5)/2)");
  if (max_iters < 0) throw InvalidInput("max_iters must be non-negative");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (!(beta_min > 0.0 && beta_min <= beta_max)) throw InvalidInput("invalid beta range");
  if (adapt_every <= 0 || adapt_ratio <= 1.0) throw InvalidInput("invalid beta adaptation");
  if (bound_every < 0 || stall_window < 0) throw InvalidInput("invalid bound schedule");
}

const char* to_string(AdmmStatus s) {
  switch (s) {
    case AdmmStatus::converged: return "converged";
    case AdmmStatus::iteration_cap: return "iteration_cap";
    case AdmmStatus::infeasible_node: return "infeasible_node";
    case AdmmStatus::cutoff: return "cutoff";
    case AdmmStatus::stalled: return "stalled";
  }
  return "unknown";
}

Eigen::MatrixXd update_R(const AdmmState& state, const Eigen::MatrixXd& v, double beta) {
  Eigen::MatrixXd m = v.transpose() * (state.y + state.z / beta) * v;
  m = 0.5 * (m + m.transpose());
  psd_project_inplace(m);
  return m;
}

Eigen::MatrixXd project_Y(const Eigen::MatrixXd& yhat, const SdpRelaxation& sdp,
                          const NodeFixings& fixings) {
  const int dim = sdp.dim;
  if (yhat.rows() != dim || yhat.cols() != dim) throw InvalidInput("Y has the wrong size");
  if (fixings.size() != dim - 1) throw InvalidInput("fixings do not match the arc count");
  Eigen::MatrixXd y(dim, dim);
  y(0, 0) = 1.0;
  for (int p = 1; p < dim; ++p) {
    const int f = fixings.value[p - 1];
    double t;
    if (f >= 0) {
      t = f;
    } else {
      t = coupled_value(yhat(p, p), 0.5 * (yhat(0, p) + yhat(p, 0)));
    }
    y(p, p) = y(0, p) = y(p, 0) = t;
  }
  for (int q = 2; q < dim; ++q) {
    const int fq = fixings.value[q - 1];
    for (int p = 1; p < q; ++p) {
      const int fp = fixings.value[p - 1];
      double t;
      if (fp == 0 || fq == 0 || sdp.is_conflict(p, q)) {
        t = 0.0;
      } else if (fp == 1 && fq == 1) {
        t = 1.0;
      } else {
        t = std::clamp(0.5 * (yhat(p, q) + yhat(q, p)), 0.0, 1.0);
      }
      y(p, q) = y(q, p) = t;
    }
  }
  return y;
}

Eigen::MatrixXd update_Y(const AdmmState& state, const SdpRelaxation& sdp, double beta,
                         const NodeFixings& fixings) {
  const Eigen::MatrixXd& v = sdp.basis;
  const Eigen::MatrixXd yhat =
      v * state.r * v.transpose() - (sdp.objective + state.z) / beta;
  return project_Y(yhat, sdp, fixings);
}

Eigen::MatrixXd update_Z(const AdmmState& state, const Eigen::MatrixXd& v, double beta,
                         double rho) {
  Eigen::MatrixXd z = state.z + rho * beta * (state.y - v * state.r * v.transpose());
  return 0.5 * (z + z.transpose());
}

Eigen::MatrixXd dual_project(const Eigen::MatrixXd& z, const Eigen::MatrixXd& v) {
  Eigen::MatrixXd m = v.transpose() * z * v;
  m = 0.5 * (m + m.transpose());
  psd_project_inplace(m);
  Eigen::MatrixXd out = z - v * m * v.transpose();
  return 0.5 * (out + out.transpose());
}

double lower_bound(const Eigen::MatrixXd& z, const SdpRelaxation& sdp,
                   const NodeFixings& fixings) {
  const int dim = sdp.dim;
  if (z.rows() != dim || z.cols() != dim) throw InvalidInput("Z has the wrong size");
  if (fixings.size() != dim - 1) throw InvalidInput("fixings do not match the arc count");
  const Eigen::MatrixXd c = sdp.objective + z;
  double bound = c(0, 0);
  for (int p = 1; p < dim; ++p) {
    const int f = fixings.value[p - 1];
    const double coupled = c(p, p) + c(0, p) + c(p, 0);
    if (f == 1) {
      bound += coupled;
    } else if (f < 0) {
      bound += std::min(0.0, coupled);
    }
  }
  for (int q = 2; q < dim; ++q) {
    const int fq = fixings.value[q - 1];
    if (fq == 0) continue;
    for (int p = 1; p < q; ++p) {
      const int fp = fixings.value[p - 1];
      if (fp == 0 || sdp.is_conflict(p, q)) continue;
      const double pair = c(p, q) + c(q, p);
      bound += (fp == 1 && fq == 1) ? pair : std::min(0.0, pair);
    }
  }
  Eigen::MatrixXd m = sdp.basis.transpose() * z * sdp.basis;
  const double lam = m.rows() > 0 ? max_eigenvalue(0.5 * (m + m.transpose())) : 0.0;
  return bound - static_cast<double>(dim) * std::max(0.0, lam);
}

namespace {

// x from an integral diagonal, if it is subtour-relaxed feasible and honors
// the fixings.
std::optional<std::vector<int>> integral_point(const Eigen::MatrixXd& y, const FlowModel& model,
                                               const NodeFixings& fixings) {
  const int n = model.num_arcs();
  std::vector<int> x(n);
  for (int p = 0; p < n; ++p) {
    const double t = y(p + 1, p + 1);
    if (std::abs(t) <= 1e-6) {
      x[p] = 0;
    } else if (std::abs(t - 1.0) <= 1e-6) {
      x[p] = 1;
    } else {
      return std::nullopt;
    }
    if (fixings.value[p] >= 0 && fixings.value[p] != x[p]) return std::nullopt;
  }
  if (!check_solution(model, x).subtour_relaxed_feasible()) return std::nullopt;
  return x;
}

}  // namespace

AdmmResult solve_admm(const SdpRelaxation& sdp, const FlowModel& model,
                      const NodeFixings& fixings, const AdmmParams& params,
                      const AdmmState* warm_start, double cutoff) {
  params.validate();
  const int dim = sdp.dim;
  if (model.num_arcs() != dim - 1) throw InvalidInput("model and relaxation sizes differ");
  if (fixings.size() != dim - 1) throw InvalidInput("fixings do not match the arc count");
  const Eigen::MatrixXd& v = sdp.basis;
  const Eigen::MatrixXd& q = sdp.objective;
  const Eigen::Index r = v.cols();

  AdmmResult res;
  AdmmState& st = res.state;
  if (!fixings.conflict_consistent(model.conflicts)) {
    res.status = AdmmStatus::infeasible_node;
    res.bounds.lower = std::numeric_limits<double>::infinity();
    return res;
  }
  if (warm_start != nullptr && warm_start->y.rows() == dim && warm_start->z.rows() == dim) {
    st.y = project_Y(warm_start->y, sdp, fixings);
    st.z = warm_start->z;
    st.r = warm_start->r.rows() == r ? warm_start->r : Eigen::MatrixXd::Zero(r, r);
    st.beta = std::clamp(warm_start->beta, params.beta_min, params.beta_max);
  } else {
    Eigen::MatrixXd e0 = Eigen::MatrixXd::Zero(dim, dim);
    e0(0, 0) = 1.0;
    st.y = project_Y(e0, sdp, fixings);
    st.z = Eigen::MatrixXd::Zero(dim, dim);
    st.r = Eigen::MatrixXd::Zero(r, r);
    st.beta = params.beta;
  }

  double best = -std::numeric_limits<double>::infinity();
  auto evaluate_bound = [&] {
    best = std::max(best, lower_bound(dual_project(st.z, v), sdp, fixings));
  };
  if (warm_start != nullptr) evaluate_bound();
  int stall_ref_iter = 0;
  double stall_ref = best;
  res.status = AdmmStatus::iteration_cap;
  if (params.log) *params.log << "iter,primal_res,dual_res,objective,beta\n";

  Eigen::MatrixXd m(r, r);
  Eigen::MatrixXd vrvt(dim, dim);
  for (int it = 1; it <= params.max_iters; ++it) {
    const double beta = st.beta;
    m.noalias() = v.transpose() * (st.y + st.z / beta) * v;
    m = 0.5 * (m + m.transpose());
    psd_project_inplace(m);
    const double dr = (m - st.r).norm();
    st.r = m;
    const Eigen::MatrixXd vr = v * st.r;
    vrvt.noalias() = vr * v.transpose();
    st.y = project_Y(vrvt - (q + st.z) / beta, sdp, fixings);
    const Eigen::MatrixXd d = st.y - vrvt;
    st.z += params.rho * beta * d;
    st.z = 0.5 * (st.z + st.z.transpose());
    st.iterations = it;

    Residuals rs{d.norm() / (1.0 + st.y.norm()), beta * dr / (1.0 + st.z.norm())};
    st.history.push_back(rs);
    if (params.log)
      *params.log << it << ',' << rs.primal << ',' << rs.dual << ',' << q.cwiseProduct(st.y).sum()
                  << ',' << beta << '\n';
    if (!st.z.allFinite() || !st.y.allFinite() || !std::isfinite(rs.dual)) {
      std::ostringstream msg;
      msg << "ADMM produced non-finite iterates at iteration " << it << " (beta " << beta
          << ", primal " << rs.primal << ", dual " << rs.dual << ")";
      throw NumericalError(msg.str());
    }
    if (std::max(rs.primal, rs.dual) <= params.tol) {
      res.status = AdmmStatus::converged;
      break;
    }
    if (params.bound_every > 0 && it % params.bound_every == 0) {
      evaluate_bound();
      if (best >= cutoff) {
        res.status = AdmmStatus::cutoff;
        break;
      }
      if (params.stall_window > 0 && it - stall_ref_iter >= params.stall_window) {
        if (best - stall_ref < params.stall_tol * (1.0 + std::abs(best))) {
          res.status = AdmmStatus::stalled;
          break;
        }
        stall_ref_iter = it;
        stall_ref = best;
      }
    }
    if (params.adaptive_beta && it % params.adapt_every == 0) {
      if (rs.primal > params.adapt_ratio * rs.dual) {
        st.beta = std::min(2.0 * beta, params.beta_max);
      } else if (rs.dual > params.adapt_ratio * rs.primal) {
        st.beta = std::max(0.5 * beta, params.beta_min);
      }
    }
  }
  evaluate_bound();
  res.bounds.lower = best;

  bool exhausted = false;
  if (auto rnd = round_lifted(st.y, model, fixings, params.rounding_budget, &exhausted)) {
    res.bounds.upper = rnd->value;
    res.bounds.x = std::move(rnd->x);
  } else if (!exhausted && best >= cutoff) {
    // no path completion and nothing better than the incumbent
    res.status = AdmmStatus::infeasible_node;
  }
  if (auto x = integral_point(st.y, model, fixings)) {
    const double val = model.objective(std::span<const int>(*x));
    if (!res.bounds.upper || val < *res.bounds.upper) {
      res.bounds.upper = val;
      res.bounds.x = std::move(*x);
    }
  }
  return res;
}

}  // namespace qkvdp
