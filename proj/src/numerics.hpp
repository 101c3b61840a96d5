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

#ifndef QKVDP_NUMERICS_HPP
#define QKVDP_NUMERICS_HPP

#include <stdexcept>

#include <Eigen/Dense>

namespace qkvdp {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense symmetric matrix. The upper triangle of the source is authoritative
/// and mirrored on construction; entries must be finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}
  explicit SymMatrix(const Eigen::MatrixXd& m);
  static SymMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  Eigen::MatrixXd m_;
};

/// M = U diag(values) U^T with values ascending and U orthonormal.
struct SymEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Throws NumericalError if the eigensolver does not converge.
SymEigen sym_eig(const SymMatrix& m);

/// Nearest PSD matrix in Frobenius norm: U max(Lambda, 0) U^T.
SymMatrix psd_project(const SymMatrix& m);

/// In-place variant for hot loops; `m` must be symmetric. Returns the
/// eigenvalues of the input.
Eigen::VectorXd psd_project_inplace(Eigen::MatrixXd& m);

/// Largest eigenvalue of a symmetric matrix.
double max_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace qkvdp

#endif  // QKVDP_NUMERICS_HPP
