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

#include "sdp_model.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/QR>

#include "numerics.hpp"

namespace qkvdp {

void SdpRelaxation::set_conflicts(std::vector<std::pair<int, int>> lifted) {
  conflicts = std::move(lifted);
  mask_.assign(static_cast<std::size_t>(dim) * dim, 0);
  conflict_neighbors.assign(dim, {});
  for (const auto& [p, q] : conflicts) {
    mask_[static_cast<std::size_t>(p) * dim + q] = 1;
    mask_[static_cast<std::size_t>(q) * dim + p] = 1;
    conflict_neighbors[p].push_back(q);
    conflict_neighbors[q].push_back(p);
  }
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& boundary) {
  const Eigen::Index cols = boundary.cols();
  if (boundary.rows() == 0 || boundary.isZero(0.0))
    return Eigen::MatrixXd::Identity(cols, cols);

  // |B|_2 by power iteration on B^T B; only used to scale the rank threshold.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(cols).normalized();
  double sigma2 = 0.0;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd w = boundary.transpose() * (boundary * v);
    const double nw = w.norm();
    if (nw == 0.0) break;
    const bool settled = std::abs(nw - sigma2) <= 1e-12 * nw;
    sigma2 = nw;
    v = w / nw;
    if (settled) break;
  }
  const double sigma = std::sqrt(sigma2);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol =
      static_cast<double>(std::max(boundary.rows(), cols)) * eps * std::max(sigma, 1.0);

  const Eigen::MatrixXd bt = boundary.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(bt);
  const Eigen::MatrixXd& r = qr.matrixR();
  Eigen::Index rank = 0;
  const Eigen::Index diag = std::min(r.rows(), r.cols());
  while (rank < diag && std::abs(r(rank, rank)) > tol) ++rank;
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(cols - rank);
}

SdpRelaxation build_sdp(const FlowModel& model) {
  const int n = model.num_arcs();
  if (model.quad.rows() != n || model.quad.cols() != n || model.linear.size() != n)
    throw InvalidInput("objective dimensions do not match the arc count " + std::to_string(n));
  if (model.supply.size() != model.num_rows())
    throw InvalidInput("supply vector does not match the vertex rows");

  SdpRelaxation sdp;
  sdp.dim = n + 1;
  sdp.objective.resize(n + 1, n + 1);
  sdp.objective(0, 0) = model.constant;
  sdp.objective.block(0, 1, 1, n) = 0.5 * model.linear.transpose();
  sdp.objective.block(1, 0, n, 1) = 0.5 * model.linear;
  sdp.objective.block(1, 1, n, n) = 0.5 * (model.quad + model.quad.transpose());

  sdp.boundary.resize(model.num_rows(), n + 1);
  sdp.boundary.col(0) = -model.supply;
  sdp.boundary.rightCols(n) = model.incidence();

  sdp.basis = nullspace_basis(sdp.boundary);
  if (sdp.basis.cols() == 0)
    throw NumericalError("ker(B) is trivial: the flow constraints admit no lifted point");

  std::vector<std::pair<int, int>> lifted;
  lifted.reserve(model.conflicts.size());
  for (const auto& [p, q] : model.conflicts.pairs()) lifted.emplace_back(p + 1, q + 1);
  sdp.set_conflicts(std::move(lifted));
  return sdp;
}

Eigen::VectorXd arrow(const Eigen::MatrixXd& y) {
  const Eigen::Index dim = y.rows();
  Eigen::VectorXd out(dim);
  out(0) = y(0, 0);
  for (Eigen::Index i = 1; i < dim; ++i) out(i) = y(i, i) - y(0, i);
  return out;
}

Eigen::MatrixXd arrow_star(const Eigen::VectorXd& z) {
  const Eigen::Index dim = z.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  out(0, 0) = z(0);
  for (Eigen::Index i = 1; i < dim; ++i) {
    out(i, i) = z(i);
    out(0, i) = -0.5 * z(i);
    out(i, 0) = -0.5 * z(i);
  }
  return out;
}

Eigen::VectorXd psi(const SdpRelaxation& sdp, const Eigen::MatrixXd& y) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(sdp.conflicts.size()));
  for (std::size_t c = 0; c < sdp.conflicts.size(); ++c)
    out(static_cast<Eigen::Index>(c)) = y(sdp.conflicts[c].first, sdp.conflicts[c].second);
  return out;
}

Eigen::MatrixXd psi_star(const SdpRelaxation& sdp, const Eigen::VectorXd& y) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sdp.dim, sdp.dim);
  for (std::size_t c = 0; c < sdp.conflicts.size(); ++c) {
    const auto [p, q] = sdp.conflicts[c];
    out(p, q) += 0.5 * y(static_cast<Eigen::Index>(c));
    out(q, p) += 0.5 * y(static_cast<Eigen::Index>(c));
  }
  return out;
}

Eigen::MatrixXd lift_solution(std::span<const int> x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()) + 1);
  v(0) = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i) + 1) = x[i];
  return v * v.transpose();
}

}  // namespace qkvdp
