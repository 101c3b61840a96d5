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

#ifndef QKVDP_CERTIFICATE_HPP
#define QKVDP_CERTIFICATE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "sdp_model.hpp"

namespace qkvdp {

// Certificates that the facially reduced relaxation has no R > 0:
// W = V^T (arrow*(z) - psi*(y)) V with W >= 0, W != 0 and <z, e_0> <= 0.

struct CertificateTolerances {
  double residual = 1e-6;        // bound on |V^T X V - W|_F
  bool relative_residual = true;  // scale the bound by (1 + |W|_F)
  double eig_floor = -1e-8;      // smallest eigenvalue of W
  double z_e0 = 1e-8;            // upper bound on <z, e_0>
  double nonzero = 1e-8;         // lower bound on |W|_F

  static CertificateTolerances strict() { return {}; }
  /// For matrices printed to four decimals.
  static CertificateTolerances printed() { return {1e-3, false, -1e-6, 1e-3, 1e-8}; }
};

struct SlaterCertificate {
  Eigen::MatrixXd w;
  Eigen::VectorXd z;
  Eigen::VectorXd y;
  double residual = 0.0;
  double z_e0 = 0.0;
  double min_eig_w = 0.0;
  double norm_w = 0.0;
  bool valid = false;
  /// Empty when valid, otherwise the first violated condition.
  std::string violation;
};

/// Solves V^T (arrow*(z) - psi*(y)) V = W for (z, y) in the least-squares
/// sense and checks every certificate condition.
SlaterCertificate verify_exposing_vector(const SdpRelaxation& sdp, const Eigen::MatrixXd& w,
                                         const CertificateTolerances& tol = {});

struct CertificateSearch {
  int max_iters = 5000;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

/// Alternating projection between {V^T (arrow*(z) - psi*(y)) V : z_0 = 0}
/// and the PSD cone, renormalizing to |W|_F = 1 each sweep. Every few sweeps
/// the iterate is polished by projecting onto the certificates that vanish
/// on its numerical null space. Returns nullopt when nothing was found,
/// which does not prove strict feasibility.
std::optional<SlaterCertificate> find_exposing_vector(const SdpRelaxation& sdp,
                                                      const CertificateSearch& params = {});

struct AlignedCertificate {
  Eigen::MatrixXd w;        // U W U^T in the basis of sdp.basis
  double distance = 0.0;    // distance from the certificate subspace
};

/// Certificates are tied to the basis V they were computed in. Any other
/// orthonormal basis of ker(M_A) is V U with U orthogonal, so W from a
/// foreign basis is re-expressed here as the member U W U^T of its
/// isospectral orbit closest to the certificate subspace.
AlignedCertificate align_exposing_vector(const SdpRelaxation& sdp, const Eigen::MatrixXd& w,
                                         int restarts = 50, int iters = 4000,
                                         std::uint64_t seed = 7);

}  // namespace qkvdp

#endif  // QKVDP_CERTIFICATE_HPP
