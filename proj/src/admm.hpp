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


#ifndef QKVDP_ADMM_HPP
#define QKVDP_ADMM_HPP

#include <algorithm>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fixings.hpp"
#include "flow_model.hpp"
#include "rounding.hpp"
#include "sdp_model.hpp"

namespace qkvdp {

struct AdmmParams {
  double beta = 1.0;
  double rho = 1.6;  // in (0, (1 + sqrt 5) / 2)
  int max_iters = 20000;
  double tol = 1e-5;

  bool adaptive_beta = true;
  double beta_min = 1e-3;
  double beta_max = 1e3;
  int adapt_every = 50;
  double adapt_ratio = 10.0;

  /// Safe bound evaluated every this many iterations (0: only at the end).
  int bound_every = 25;
  /// Stop when the safe bound gained less than stall_tol * (1 + |bound|)
  /// over the last stall_window iterations (0 disables).
  int stall_window = 0;
  double stall_tol = 1e-6;

  long rounding_budget = 1000000;

  /// Iteration log "iter,primal_res,dual_res,objective,beta" when set.
  std::ostream* log = nullptr;

  /// Throws InvalidInput on out-of-range values.
  void validate() const;
};

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
};

struct AdmmState {
  Eigen::MatrixXd r;  // r x r
  Eigen::MatrixXd y;  // (n+1) x (n+1)
  Eigen::MatrixXd z;  // (n+1) x (n+1)
  double beta = 1.0;
  int iterations = 0;
  std::vector<Residuals> history;
};

struct Bounds {
  double lower = -std::numeric_limits<double>::infinity();
  std::optional<double> upper;
  std::vector<int> x;  // rounded solution when upper is set
};

enum class AdmmStatus { converged, iteration_cap, infeasible_node, cutoff, stalled };

const char* to_string(AdmmStatus s);

struct AdmmResult {
  AdmmState state;
  Bounds bounds;
  AdmmStatus status = AdmmStatus::iteration_cap;
};

/// P_psd(V^T (Y + Z / beta) V).
Eigen::MatrixXd update_R(const AdmmState& state, const Eigen::MatrixXd& v, double beta);

/// Common value of a coupled pair (Y_pp, Y_0p): the projection of
/// (yhat_pp, yhat_0p, yhat_p0) onto {t = s = u} intersected with [0, 1].
inline double coupled_value(double yhat_pp, double yhat_0p) {
  return std::clamp((yhat_pp + 2.0 * yhat_0p) / 3.0, 0.0, 1.0);
}

/// Projection of a symmetric matrix onto F_Y with node fixings.
Eigen::MatrixXd project_Y(const Eigen::MatrixXd& yhat, const SdpRelaxation& sdp,
                          const NodeFixings& fixings);

/// P_FY(V R V^T - (Q + Z) / beta).
Eigen::MatrixXd update_Y(const AdmmState& state, const SdpRelaxation& sdp, double beta,
                         const NodeFixings& fixings);

/// Z + rho * beta * (Y - V R V^T).
Eigen::MatrixXd update_Z(const AdmmState& state, const Eigen::MatrixXd& v, double beta,
                         double rho);

/// Z - V P_psd(V^T Z V) V^T, the nearest point of {Z : V^T Z V <= 0}.
Eigen::MatrixXd dual_project(const Eigen::MatrixXd& z, const Eigen::MatrixXd& v);

/// min <Q + Z, Y> over F_Y with fixings, minus (n + 1) * max(0,
/// lambda_max(V^T Z V)) to absorb roundoff in the dual projection. A valid
/// lower bound on the node optimum for any Z.
double lower_bound(const Eigen::MatrixXd& z, const SdpRelaxation& sdp,
                   const NodeFixings& fixings);

/// The ADMM loop for one node. Stops on convergence, the iteration cap, or,
/// once a safe bound reaches `cutoff`, with status cutoff. The status is
/// infeasible_node when the fixings conflict, or when the rounding search
/// proves there is no path completion and the bound reaches `cutoff`.
AdmmResult solve_admm(const SdpRelaxation& sdp, const FlowModel& model,
                      const NodeFixings& fixings, const AdmmParams& params,
                      const AdmmState* warm_start = nullptr,
                      double cutoff = std::numeric_limits<double>::infinity());

}  // namespace qkvdp

#endif  // QKVDP_ADMM_HPP
