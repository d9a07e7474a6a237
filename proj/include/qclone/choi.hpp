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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "qclone/dist.hpp"
#include "qclone/optimal.hpp"
#include "qclone/qsim.hpp"

namespace qclone {

// Choi matrix of a 1 -> 2 qubit channel on (input x clone1 x clone2), with
// rho_out = Tr_in[chi (rho_in^T x 1 x 1)]. Construction does not validate;
// use is_cptp().
class ChoiMatrix {
 public:
  explicit ChoiMatrix(const Matrix8c& m) : m_(m) {}

  const Matrix8c& matrix() const { return m_; }

  // Partial trace over both clones; equals the identity for a
  // trace-preserving map.
  Matrix2c input_marginal() const;
  double min_eigenvalue() const;
  bool is_cptp(double tol = 1e-10) const;

  // The output state for a given input.
  Eigen::Matrix4cd apply(const Matrix2c& rho_in) const;

 private:
  Matrix8c m_;
};

// R with Tr(chi R) = ensemble-averaged single-copy fidelity.
class MeritOperator {
 public:
  explicit MeritOperator(const Matrix8c& m) : m_(m) {}
  const Matrix8c& matrix() const { return m_; }

 private:
  Matrix8c m_;
};

// R = 1/2 <rho^T x (rho x 1 + 1 x rho)> over the ensemble, by adaptive
// Gauss-Legendre quadrature in cos theta and a 16-point rule in phi. Point
// masses are evaluated at their atoms.
MeritOperator build_merit(const AxisDistribution& dist);

// Choi matrix of the channel obtained by tracing the environment out of an
// isometry V : C^2 -> C^4 x C^env_dim (row index = clones * env_dim + env).
ChoiMatrix choi_from_isometry(const Eigen::MatrixXcd& v, int env_dim);

// Closed form of the optimal cloner's Choi matrix in terms of c+-, s+-.
ChoiMatrix choi_from_params(const ClonerParams& p);

// Cloning isometry with the beta angles restored:
//   |0> -> cos a+ (cos b+ |00> + sin b+ |11>)|1> + sin a+ |Psi+>|0>
//   |1> -> cos a- (cos b- |11> + sin b- |00>)|0> + sin a- |Psi+>|1>
Isometry8x2 clone_isometry_general(double alpha_plus, double alpha_minus,
                                   double beta_plus, double beta_minus);

// Real part of Tr(chi R). Throws DomainError on non-Hermitian input or a
// trace with imaginary part above 1e-12.
double choi_fidelity(const ChoiMatrix& chi, const MeritOperator& r);

// Channel from a Haar-random isometry C^2 -> C^4 x C^(2 env_dim) with the
// environment traced out; env_dim in [1, 4]. Deterministic per (seed,
// env_dim). The Kraus rank is at most 2 env_dim.
ChoiMatrix random_cptp(std::uint64_t seed, int env_dim);

// Block decomposition in the basis
//   |psi psi psi>, |psi_bar>|Psi+>, |psi_bar psi_bar psi_bar>, |psi>|Psi+>,
//   |psi_bar>|Psi->, |psi>|Psi->, |psi psi_bar psi_bar>, |psi_bar psi psi>.
struct SymmetryBlocks {
  Matrix2c first;   // span{|psi psi psi>, |psi_bar>|Psi+>}
  Matrix2c second;  // span{|psi_bar psi_bar psi_bar>, |psi>|Psi+>}
  // Diagonal entries on the last four basis vectors, in the order above.
  std::array<double, 4> scalars;
  // Frobenius norm of everything outside the blocks.
  double off_block_norm;
};

// Columns are the symmetry-adapted basis vectors above.
Matrix8c symmetry_basis();

SymmetryBlocks symmetry_blocks(const Matrix8c& m);

// Symmetric, phase-covariant, trace-preserving family parametrized by
// (eta1, eta2, eta3, xi1, xi2, xi3, zeta1, zeta2); eta4 and xi4 follow from
// trace preservation.
using FamilyParams = std::array<double, 8>;
ChoiMatrix choi_from_family(const FamilyParams& params);

struct StructuredOptimum {
  double fidelity;
  ChoiMatrix choi;
  FamilyParams params;
};

// Maximizes Tr(chi R) over the family by multi-start Nelder-Mead with an
// parametrization that is positive semidefinite by construction.
StructuredOptimum constrained_maximize(const MeritOperator& r, int starts = 32,
                                       std::uint64_t seed = 1);

// Largest Tr(chi R) over random_cptp(base_seed + i, d) for i < n_seeds and
// every d in env_dims.
double max_sampled_fidelity(const MeritOperator& r, std::uint64_t base_seed,
                            std::size_t n_seeds, std::span<const int> env_dims);

struct OptimalityReport {
  std::string distribution;
  double f_opt;
  double max_sampled_f;
  std::size_t n_samples;
  double max_structured_f;

  bool sampled_ok(double tol = 1e-9) const { return max_sampled_f <= f_opt + tol; }
  bool structured_ok(double tol = 1e-7) const {
    return max_structured_f <= f_opt + tol;
  }
};

// Sampled and structured optimality check of the analytical cloner.
// n_samples counts seeds times env_dims.
OptimalityReport certify_optimality(const AxisDistribution& dist,
                                    std::string label, std::size_t n_seeds,
                                    std::uint64_t seed,
                                    std::span<const int> env_dims);

}  // namespace qclone
