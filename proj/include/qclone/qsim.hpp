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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "qclone/optimal.hpp"

namespace qclone {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;
using Isometry8x2 = Eigen::Matrix<cplx, 8, 2>;

// Three-qubit register ordering: (clone1, clone2, ancilla), clone1 being the
// most significant bit of the basis index.
using ThreeQubitState = Vector8c;

// Pure qubit cos(theta/2)|psi> + e^{i phi} sin(theta/2)|psi_bar>, angles taken
// relative to a frame (by default the computational one).
struct PureQubit {
  double theta = 0.0;
  double phi = 0.0;

  Vector2c amplitudes() const;
  // Bloch angles of a (normalized) amplitude vector; global phase is dropped.
  static PureQubit from_amplitudes(const Vector2c& v);
};

// Orientation of the symmetry axis |psi> in the global basis:
//   |psi>     = cos(vt/2)|0> + e^{i vp} sin(vt/2)|1>
//   |psi_bar> = -e^{-i vp} sin(vt/2)|0> + cos(vt/2)|1>
struct AxisFrame {
  double vartheta = 0.0;
  double varphi = 0.0;

  // Columns are |psi> and |psi_bar> in global coordinates.
  Matrix2c basis() const;
};

// Re-expresses a qubit given in global coordinates relative to the frame.
PureQubit rotate_frame(const PureQubit& global, const AxisFrame& frame);
// Inverse of rotate_frame.
PureQubit unrotate_frame(const PureQubit& local, const AxisFrame& frame);

// Hermitian, unit-trace, positive semidefinite matrix on 1-3 qubits.
class DensityMatrix {
 public:
  // Validates the density-matrix invariants; throws DomainError.
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  static DensityMatrix from_pure(const Eigen::VectorXcd& state);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  int num_qubits() const;

  // Expectation <v|rho|v>.
  double expectation(const Eigen::VectorXcd& v) const;

 private:
  Eigen::MatrixXcd rho_;
};

// Partial trace of an n-qubit density matrix keeping the listed qubits
// (1-based, qubit 1 most significant). The kept set must be non-empty and
// proper.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::initializer_list<int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// Images of |0> and |1> (with the clone and ancilla qubits in |00>).
Isometry8x2 clone_isometry(const ClonerParams& p);

ThreeQubitState apply_clone(const PureQubit& q, const ClonerParams& p);

// Clones a qubit given in global coordinates with the cloner oriented along
// `frame`; the output is expressed in global coordinates as well.
ThreeQubitState apply_clone_in_frame(const PureQubit& global,
                                     const AxisFrame& frame,
                                     const ClonerParams& p);

// <psi|rho_i|psi> for clone i in {1, 2}, from the full simulated output.
double clone_fidelity_sim(const PureQubit& q, const ClonerParams& p,
                          int clone);

// Kronecker product of small dense matrices.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qclone
