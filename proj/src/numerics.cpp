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

#include "numerics.hpp"

#include <string>

namespace qkvdp {
namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver did not converge (dim " +
                         std::to_string(m.rows()) + ", |M|_F = " + std::to_string(m.norm()) +
                         ")");
  return es;
}

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix needs a square matrix");
  if (!m.allFinite()) throw std::invalid_argument("SymMatrix entries must be finite");
  m_ = m.selfadjointView<Eigen::Upper>();
}

SymMatrix SymMatrix::identity(int dim) {
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymEigen sym_eig(const SymMatrix& m) {
  if (m.dim() == 0) return {};
  auto es = solve(m.matrix());
  return {es.eigenvalues(), es.eigenvectors()};
}

SymMatrix psd_project(const SymMatrix& m) {
  Eigen::MatrixXd out = m.matrix();
  psd_project_inplace(out);
  return SymMatrix(out);
}

Eigen::VectorXd psd_project_inplace(Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  if (!m.allFinite()) throw NumericalError("non-finite entries in PSD projection input");
  auto es = solve(m);
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::MatrixXd& u = es.eigenvectors();
  // Keep only the positive branch: U+ diag(w+) U+^T.
  Eigen::Index first = 0;
  while (first < w.size() && w(first) <= 0.0) ++first;
  const Eigen::Index keep = w.size() - first;
  if (keep == 0) {
    m.setZero();
  } else {
    const Eigen::MatrixXd scaled =
        u.rightCols(keep) * w.tail(keep).cwiseSqrt().asDiagonal();
    m.noalias() = scaled * scaled.transpose();
  }
  return w;
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation did not converge");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace qkvdp
