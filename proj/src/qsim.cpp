// Copyright 2026 The qclone Authors
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

#include "qclone/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "qclone/error.hpp"

namespace qclone {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

int log2_dim(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  return (Eigen::Index{1} << n) == d ? n : -1;
}

}  // namespace

Vector2c PureQubit::amplitudes() const {
  return {cplx(std::cos(0.5 * theta), 0.0),
          std::polar(std::sin(0.5 * theta), phi)};
}

PureQubit PureQubit::from_amplitudes(const Vector2c& v) {
  const double r0 = std::abs(v(0));
  const double r1 = std::abs(v(1));
  PureQubit q;
  q.theta = 2.0 * std::atan2(r1, r0);
  if (r0 > 0.0 && r1 > 0.0) {
    double phi = std::arg(v(1)) - std::arg(v(0));
    phi = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    q.phi = phi;
  }
  return q;
}

Matrix2c AxisFrame::basis() const {
  const double c = std::cos(0.5 * vartheta);
  const double s = std::sin(0.5 * vartheta);
  Matrix2c b;
  b << cplx(c, 0.0), -std::polar(s, -varphi),
       std::polar(s, varphi), cplx(c, 0.0);
  return b;
}

PureQubit rotate_frame(const PureQubit& global, const AxisFrame& frame) {
  return PureQubit::from_amplitudes(frame.basis().adjoint() *
                                    global.amplitudes());
}

PureQubit unrotate_frame(const PureQubit& local, const AxisFrame& frame) {
  return PureQubit::from_amplitudes(frame.basis() * local.amplitudes());
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  const int n = log2_dim(rho_.rows());
  if (rho_.rows() != rho_.cols() || n < 1 || n > 3) {
    throw DomainError("density matrix must be 2x2, 4x4 or 8x8");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - 1.0) > 1e-12) {
    throw DomainError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& state) {
  return DensityMatrix(state * state.adjoint());
}

int DensityMatrix::num_qubits() const { return log2_dim(rho_.rows()); }

double DensityMatrix::expectation(const Eigen::VectorXcd& v) const {
  return (v.adjoint() * rho_ * v)(0, 0).real();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<int> keep) {
  return partial_trace(rho, std::vector<int>(keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.num_qubits();
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty() || static_cast<int>(kept.size()) >= n ||
      kept.front() < 1 || kept.back() > n) {
    throw DomainError("partial_trace: kept qubits must be a non-empty proper subset");
  }
  auto bit = [n](Eigen::Index idx, int qubit) {
    return static_cast<int>((idx >> (n - qubit)) & 1);
  };
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  auto project = [&](Eigen::Index idx, const std::vector<int>& qubits) {
    Eigen::Index out = 0;
    for (int q : qubits) out = (out << 1) | bit(idx, q);
    return out;
  };

  const Eigen::Index d = rho.dim();
  const Eigen::Index k = Eigen::Index{1} << kept.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (project(i, traced) != project(j, traced)) continue;
      out(project(i, kept), project(j, kept)) += m(i, j);
    }
  }
  return DensityMatrix(std::move(out));
}

Isometry8x2 clone_isometry(const ClonerParams& p) {
  const double cp = std::cos(p.alpha_plus);
  const double sp = std::sin(p.alpha_plus);
  const double cm = std::cos(p.alpha_minus);
  const double sm = std::sin(p.alpha_minus);
  Isometry8x2 v = Isometry8x2::Zero();
  // |0> -> cos a+ |001> + sin a+ (|010> + |100>)/sqrt2
  v(1, 0) = cp;
  v(2, 0) = sp * kInvSqrt2;
  v(4, 0) = sp * kInvSqrt2;
  // |1> -> cos a- |110> + sin a- (|011> + |101>)/sqrt2
  v(6, 1) = cm;
  v(3, 1) = sm * kInvSqrt2;
  v(5, 1) = sm * kInvSqrt2;
  return v;
}

ThreeQubitState apply_clone(const PureQubit& q, const ClonerParams& p) {
  return clone_isometry(p) * q.amplitudes();
}

ThreeQubitState apply_clone_in_frame(const PureQubit& global,
                                     const AxisFrame& frame,
                                     const ClonerParams& p) {
  const Matrix2c b = frame.basis();
  const Eigen::MatrixXcd b3 = kron(b, kron(b, b));
  return b3 * (clone_isometry(p) * (b.adjoint() * global.amplitudes()));
}

double clone_fidelity_sim(const PureQubit& q, const ClonerParams& p,
                          int clone) {
  if (clone != 1 && clone != 2) {
    throw DomainError("clone_fidelity_sim: clone index must be 1 or 2");
  }
  const auto out = DensityMatrix::from_pure(apply_clone(q, p));
  return partial_trace(out, {clone}).expectation(q.amplitudes());
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

}  // namespace qclone
