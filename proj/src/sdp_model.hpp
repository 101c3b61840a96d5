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

#ifndef QKVDP_SDP_MODEL_HPP
#define QKVDP_SDP_MODEL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "flow_model.hpp"

namespace qkvdp {

/// Lifted relaxation of a flow model over Y in S^{n+1}, index 0 being the
/// homogenizing coordinate and arc e living at index e + 1:
///
///   min <Q, Y>  s.t.  <M_A, Y> = 0,  Y_pq = 0 for conflicts,
///                     arrow(Y) = e_0,  Y = V R V^T,  R >= 0,
///
/// where M_A = B^T B with B = [-b | A] and V is an orthonormal basis of
/// ker(B) = ker(M_A).
struct SdpRelaxation {
  int dim = 0;                // n + 1
  Eigen::MatrixXd objective;  // [[kappa, c^T/2], [c/2, Q]]
  Eigen::MatrixXd boundary;   // B, rows x (n + 1)
  Eigen::MatrixXd basis;      // V, (n + 1) x r
  /// Lifted conflict pairs (p, q), 1 <= p < q <= n.
  std::vector<std::pair<int, int>> conflicts;
  /// Lifted conflict neighbors, one list per lifted index.
  std::vector<std::vector<int>> conflict_neighbors;

  int num_arcs() const { return dim - 1; }
  int face_dim() const { return static_cast<int>(basis.cols()); }
  bool is_conflict(int p, int q) const { return mask_[static_cast<std::size_t>(p) * dim + q] != 0; }
  Eigen::MatrixXd gram() const { return boundary.transpose() * boundary; }

  void set_conflicts(std::vector<std::pair<int, int>> lifted);

 private:
  std::vector<std::uint8_t> mask_;
};

/// Throws InvalidInput when the cost data does not match the arc count and
/// NumericalError when ker(B) is trivial.
SdpRelaxation build_sdp(const FlowModel& model);

/// Orthonormal basis of ker(B) from a column-pivoted QR of B^T. The rank
/// threshold is max(rows, cols) * eps * |B|_2.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& boundary);

/// (Y_00, Y_11 - Y_01, ..., Y_nn - Y_0n).
Eigen::VectorXd arrow(const Eigen::MatrixXd& y);

/// Adjoint of arrow: z_0 L_00 + sum_i z_i (L_ii - L_0i/2 - L_i0/2).
Eigen::MatrixXd arrow_star(const Eigen::VectorXd& z);

/// Conflict entries (Y_pq) in the order of sdp.conflicts.
Eigen::VectorXd psi(const SdpRelaxation& sdp, const Eigen::MatrixXd& y);

/// Adjoint of psi: y_pq / 2 at (p, q) and (q, p).
Eigen::MatrixXd psi_star(const SdpRelaxation& sdp, const Eigen::VectorXd& y);

/// [1; x][1; x]^T for a 0/1 arc vector.
Eigen::MatrixXd lift_solution(std::span<const int> x);

}  // namespace qkvdp

#endif  // QKVDP_SDP_MODEL_HPP
