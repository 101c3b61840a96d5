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

#include "certificate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "numerics.hpp"
#include "rng.hpp"

namespace qkvdp {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kMaxOperatorEntries = 4e7;

// Isometric vectorization of S^r: diagonal entries, then sqrt(2) * off-diagonals.
Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const Eigen::Index r = m.rows();
  Eigen::VectorXd v(r * (r + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) v(k++) = i == j ? m(i, i) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, Eigen::Index r) {
  Eigen::MatrixXd m(r, r);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (i == j) {
        m(i, i) = v(k++);
      } else {
        m(i, j) = m(j, i) = v(k++) / kSqrt2;
      }
    }
  return m;
}

// Columns: svec(V^T arrow*(e_i) V) for i = first_z..n, then
// svec(-V^T psi*(e_c) V) for every conflict c.
Eigen::MatrixXd certificate_operator(const SdpRelaxation& sdp, int first_z) {
  const Eigen::MatrixXd& v = sdp.basis;
  const Eigen::Index r = v.cols();
  const Eigen::Index d = r * (r + 1) / 2;
  const Eigen::Index cols =
      (sdp.dim - first_z) + static_cast<Eigen::Index>(sdp.conflicts.size());
  if (static_cast<double>(d) * static_cast<double>(cols) > kMaxOperatorEntries)
    throw InvalidInput("model too large for certificate computations");
  Eigen::MatrixXd g(d, cols);
  Eigen::Index c = 0;
  const Eigen::VectorXd v0 = v.row(0).transpose();
  for (int i = first_z; i < sdp.dim; ++i) {
    const Eigen::VectorXd vi = v.row(i).transpose();
    Eigen::MatrixXd x;
    if (i == 0) {
      x = v0 * v0.transpose();
    } else {
      x = vi * vi.transpose() - 0.5 * (v0 * vi.transpose() + vi * v0.transpose());
    }
    g.col(c++) = svec(x);
  }
  for (const auto& [p, q] : sdp.conflicts) {
    const Eigen::VectorXd vp = v.row(p).transpose();
    const Eigen::VectorXd vq = v.row(q).transpose();
    g.col(c++) = svec(-0.5 * (vp * vq.transpose() + vq * vp.transpose()));
  }
  return g;
}

// Orthonormal basis of range(g).
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& g) {
  if (g.cols() == 0) return Eigen::MatrixXd(g.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const Eigen::MatrixXd q = qr.householderQ();
  return q.leftCols(rank);
}

// Right singular vectors with sigma <= rel * sigma_max.
Eigen::MatrixXd approx_nullspace(const Eigen::MatrixXd& g, double rel) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rel * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(g.cols() - rank);
}

double min_eig(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  return sym_eig(SymMatrix(m)).values(0);
}

}  // namespace

SlaterCertificate verify_exposing_vector(const SdpRelaxation& sdp, const Eigen::MatrixXd& w,
                                         const CertificateTolerances& tol) {
  const Eigen::Index r = sdp.face_dim();
  if (w.rows() != r || w.cols() != r)
    throw InvalidInput("exposing vector must be " + std::to_string(r) + "x" + std::to_string(r));
  if (!w.allFinite()) throw InvalidInput("exposing vector has non-finite entries");

  SlaterCertificate cert;
  cert.w = 0.5 * (w + w.transpose());
  cert.norm_w = cert.w.norm();
  cert.min_eig_w = min_eig(cert.w);

  const Eigen::MatrixXd g = certificate_operator(sdp, 0);
  const Eigen::VectorXd rhs = svec(cert.w);
  const Eigen::VectorXd sol = g.completeOrthogonalDecomposition().solve(rhs);
  cert.residual = (g * sol - rhs).norm();
  cert.z = sol.head(sdp.dim);
  cert.y = sol.tail(static_cast<Eigen::Index>(sdp.conflicts.size()));
  cert.z_e0 = cert.z(0);

  const double residual_bound = tol.residual * (tol.relative_residual ? 1.0 + cert.norm_w : 1.0);
  std::ostringstream why;
  if (cert.norm_w <= tol.nonzero) {
    why << "W is zero (|W|_F = " << cert.norm_w << ")";
  } else if (cert.min_eig_w < tol.eig_floor) {
    why << "W is not PSD (min eigenvalue " << cert.min_eig_w << ")";
  } else if (cert.residual > residual_bound) {
    why << "affine residual " << cert.residual << " exceeds " << residual_bound;
  } else if (cert.z_e0 > tol.z_e0) {
    why << "<z, e0> = " << cert.z_e0 << " is positive";
  }
  cert.violation = why.str();
  cert.valid = cert.violation.empty();
  return cert;
}

std::optional<SlaterCertificate> find_exposing_vector(const SdpRelaxation& sdp,
                                                      const CertificateSearch& params) {
  const Eigen::Index r = sdp.face_dim();
  const Eigen::MatrixXd basis = range_basis(certificate_operator(sdp, 1));
  if (basis.cols() == 0) return std::nullopt;
  auto project = [&](const Eigen::MatrixXd& m) {
    return smat(basis * (basis.transpose() * svec(m)), r);
  };

  Rng rng(params.seed, 0x5EA7C4);
  auto accept = [&](const Eigen::MatrixXd& cand) -> std::optional<SlaterCertificate> {
    const double nrm = cand.norm();
    if (nrm <= 1e-12) return std::nullopt;
    if (min_eig(cand) < -params.tol * nrm) return std::nullopt;
    SlaterCertificate cert = verify_exposing_vector(sdp, cand / nrm);
    if (cert.valid) return cert;
    return std::nullopt;
  };

  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(r, r) / std::sqrt(static_cast<double>(r));
  for (int it = 0; it < params.max_iters; ++it) {
    Eigen::MatrixXd p = project(w);
    const double nrm = p.norm();
    if (nrm <= 1e-12) {
      Eigen::MatrixXd g(r, r);
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
      w = g * g.transpose();
      w /= w.norm();
      continue;
    }
    if (auto cert = accept(p)) return cert;

    const SymEigen es = sym_eig(SymMatrix(p));
    if (it % 10 == 0) {
      // Polish: restrict to certificates vanishing on the near-null space.
      const double lmax = es.values(r - 1);
      Eigen::Index s = 0;
      while (s < r && es.values(s) < 1e-3 * std::max(lmax, nrm)) ++s;
      if (s > 0 && s < r) {
        const Eigen::MatrixXd null = es.vectors.leftCols(s);
        Eigen::MatrixXd g2(r * s, basis.cols());
        for (Eigen::Index j = 0; j < basis.cols(); ++j) {
          const Eigen::MatrixXd prod = smat(basis.col(j), r) * null;
          g2.col(j) = Eigen::Map<const Eigen::VectorXd>(prod.data(), prod.size());
        }
        const Eigen::MatrixXd ns = approx_nullspace(g2, 1e-6);
        if (ns.cols() > 0 && ns.cols() < basis.cols()) {
          const Eigen::MatrixXd sub = basis * ns;
          const Eigen::MatrixXd polished = smat(sub * (sub.transpose() * svec(p)), r);
          if (polished.norm() > 1e-6 * nrm) {
            if (auto cert = accept(polished)) return cert;
          }
        }
      }
    }
    Eigen::MatrixXd cone = p;
    psd_project_inplace(cone);
    const double cn = cone.norm();
    if (cn <= 1e-14) {
      Eigen::MatrixXd g(r, r);
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
      cone = g * g.transpose();
    }
    w = cone / cone.norm();
  }
  return std::nullopt;
}

AlignedCertificate align_exposing_vector(const SdpRelaxation& sdp, const Eigen::MatrixXd& w,
                                         int restarts, int iters, std::uint64_t seed) {
  const Eigen::Index r = sdp.face_dim();
  if (w.rows() != r || w.cols() != r)
    throw InvalidInput("exposing vector must be " + std::to_string(r) + "x" + std::to_string(r));
  const Eigen::MatrixXd basis = range_basis(certificate_operator(sdp, 1));
  auto project = [&](const Eigen::MatrixXd& m) {
    return smat(basis * (basis.transpose() * svec(m)), r);
  };
  const Eigen::VectorXd spectrum = sym_eig(SymMatrix(0.5 * (w + w.transpose()))).values;

  Rng rng(seed, 0xA11C);
  AlignedCertificate best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int start = 0; start < restarts; ++start) {
    Eigen::MatrixXd g(r, r);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    Eigen::MatrixXd t = q * spectrum.asDiagonal() * q.transpose();
    double dist = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iters; ++it) {
      const Eigen::MatrixXd p = project(t);
      // Nearest isospectral matrix to p: same eigenvectors, sorted spectrum.
      const SymEigen es = sym_eig(SymMatrix(p));
      t = es.vectors * spectrum.asDiagonal() * es.vectors.transpose();
      dist = (t - project(t)).norm();
      if (dist < 1e-12) break;
    }
    if (dist < best.distance) {
      best.distance = dist;
      best.w = 0.5 * (t + t.transpose());
    }
    if (best.distance < 1e-9) break;
  }
  return best;
}

}  // namespace qkvdp
