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

#include "qclone/choi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gsl/gsl_multimin.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "qclone/error.hpp"
#include "qclone/quadrature.hpp"

namespace qclone {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr int kPhiNodes = 16;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// 1/2 rho^T x (rho x 1 + 1 x rho), averaged over phi at fixed cos theta.
Matrix8c merit_at(double x) {
  x = std::clamp(x, -1.0, 1.0);
  const double c = std::sqrt(0.5 * (1.0 + x));
  const double s = std::sqrt(0.5 * (1.0 - x));
  const Matrix2c id = Matrix2c::Identity();
  Matrix8c sum = Matrix8c::Zero();
  for (int k = 0; k < kPhiNodes; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / kPhiNodes;
    const Vector2c psi(cplx(c, 0.0), std::polar(s, phi));
    const Matrix2c rho = psi * psi.adjoint();
    const Eigen::Matrix4cd both =
        Eigen::kroneckerProduct(rho, id) + Eigen::kroneckerProduct(id, rho);
    sum += Eigen::kroneckerProduct(rho.transpose().eval(), both);
  }
  return sum * (0.5 / kPhiNodes);
}

double hermitian_defect(const Matrix8c& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

using RealMatrix8 = Eigen::Matrix<double, 8, 8>;

RealMatrix8 family_matrix(const double* p) {
  const double eta1 = p[0], eta2 = p[1], eta3 = p[2];
  const double xi1 = p[3], xi2 = p[4], xi3 = p[5];
  const double zeta1 = p[6], zeta2 = p[7];
  RealMatrix8 m = RealMatrix8::Zero();
  m(0, 0) = eta1;
  m(1, 1) = m(2, 2) = eta2;
  m(1, 2) = m(2, 1) = eta3;
  m(3, 3) = 1.0 - 2.0 * eta2 - eta1;
  m(4, 4) = 1.0 - 2.0 * xi2 - xi1;
  m(5, 5) = m(6, 6) = xi2;
  m(5, 6) = m(6, 5) = xi3;
  m(7, 7) = xi1;
  m(0, 5) = m(0, 6) = m(5, 0) = m(6, 0) = zeta1;
  m(1, 7) = m(2, 7) = m(7, 1) = m(7, 2) = zeta2;
  return m;
}

struct FamilyProblem {
  RealMatrix8 r_real;  // Re(R^T): Tr(chi R) = sum chi_ij Re R_ji for real chi
};

// Unit vector in R^4 from three hyperspherical angles.
std::array<double, 4> sphere_point(const double* a) {
  return {std::cos(a[0]), std::sin(a[0]) * std::cos(a[1]),
          std::sin(a[0]) * std::sin(a[1]) * std::cos(a[2]),
          std::sin(a[0]) * std::sin(a[1]) * std::sin(a[2])};
}

// Every point of R^8 maps onto a PSD member of the family and every PSD
// member is reached. x holds the square roots of (eta1, eta2 + eta3,
// eta2 - eta3, eta4), y those of (xi1, xi2 + xi3, xi2 - xi3, xi4); each zeta
// is a fraction sin(tau) of its 2x2 Cholesky bound.
FamilyParams unpack_family(const double* t) {
  const auto x = sphere_point(t);
  const auto y = sphere_point(t + 3);
  FamilyParams p;
  p[0] = x[0] * x[0];
  p[1] = 0.5 * (x[1] * x[1] + x[2] * x[2]);
  p[2] = 0.5 * (x[1] * x[1] - x[2] * x[2]);
  p[3] = y[0] * y[0];
  p[4] = 0.5 * (y[1] * y[1] + y[2] * y[2]);
  p[5] = 0.5 * (y[1] * y[1] - y[2] * y[2]);
  p[6] = std::sin(t[6]) * x[0] * y[1] * kInvSqrt2;
  p[7] = std::sin(t[7]) * y[0] * x[1] * kInvSqrt2;
  return p;
}

double negative_family_fidelity(const gsl_vector* v, void* data) {
  const auto* problem = static_cast<const FamilyProblem*>(data);
  const RealMatrix8 chi = family_matrix(unpack_family(v->data).data());
  return -chi.cwiseProduct(problem->r_real).sum();
}

// One Nelder-Mead descent from x; returns the final objective value.
double nelder_mead(const FamilyProblem& problem, std::array<double, 8>& x,
                   double step) {
  const gsl_multimin_fminimizer_type* type = gsl_multimin_fminimizer_nmsimplex2;
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(type, 8);
  gsl_vector* start = gsl_vector_alloc(8);
  gsl_vector* steps = gsl_vector_alloc(8);
  for (int i = 0; i < 8; ++i) {
    gsl_vector_set(start, i, x[i]);
    gsl_vector_set(steps, i, step);
  }
  gsl_multimin_function fn;
  fn.n = 8;
  fn.f = &negative_family_fidelity;
  fn.params = const_cast<FamilyProblem*>(&problem);
  gsl_multimin_fminimizer_set(solver, &fn, start, steps);
  for (int iter = 0; iter < 20000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-12) ==
        GSL_SUCCESS) {
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(solver);
  for (int i = 0; i < 8; ++i) x[i] = gsl_vector_get(best, i);
  const double value = gsl_multimin_fminimizer_minimum(solver);
  gsl_vector_free(steps);
  gsl_vector_free(start);
  gsl_multimin_fminimizer_free(solver);
  return value;
}

}  // namespace

Matrix2c ChoiMatrix::input_marginal() const {
  Matrix2c out = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int a = 0; a < 4; ++a) out(i, j) += m_(4 * i + a, 4 * j + a);
    }
  }
  return out;
}

double ChoiMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix8c> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool ChoiMatrix::is_cptp(double tol) const {
  return hermitian_defect(m_) <= tol && min_eigenvalue() >= -tol &&
         (input_marginal() - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::Matrix4cd ChoiMatrix::apply(const Matrix2c& rho_in) const {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out += rho_in(i, j) * m_.block<4, 4>(4 * i, 4 * j);
    }
  }
  return out;
}

MeritOperator build_merit(const AxisDistribution& dist) {
  Matrix8c r = std::visit(
      overloaded{
          [](const kind::Delta& k) -> Matrix8c {
            return merit_at(std::cos(k.theta));
          },
          [](const kind::DeltaPair& k) -> Matrix8c {
            const double c = std::cos(k.theta);
            return 0.5 * (merit_at(c) + merit_at(-c));
          },
          [&dist](const auto&) -> Matrix8c {
            const auto breaks = density_breakpoints(dist);
            return quad::integrate_piecewise(
                [&dist](double x) -> Matrix8c {
                  return marginal_density(dist, x) * merit_at(x);
                },
                breaks);
          },
      },
      dist.kind());
  return MeritOperator(0.5 * (r + r.adjoint()));
}

ChoiMatrix choi_from_isometry(const Eigen::MatrixXcd& v, int env_dim) {
  if (v.cols() != 2 || v.rows() != 4 * env_dim) {
    throw DomainError("choi_from_isometry: expected a (4 env_dim) x 2 matrix");
  }
  Matrix8c chi = Matrix8c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          cplx sum = 0.0;
          for (int e = 0; e < env_dim; ++e) {
            sum += v(a * env_dim + e, i) * std::conj(v(b * env_dim + e, j));
          }
          chi(4 * i + a, 4 * j + b) = sum;
        }
      }
    }
  }
  return ChoiMatrix(chi);
}

ChoiMatrix choi_from_params(const ClonerParams& p) {
  const double cp = std::cos(p.alpha_plus);
  const double sp = std::sin(p.alpha_plus);
  const double cm = std::cos(p.alpha_minus);
  const double sm = std::sin(p.alpha_minus);
  Matrix8c chi = Matrix8c::Zero();
  chi(0, 0) = cp * cp;
  chi(7, 7) = cm * cm;
  for (int a : {1, 2}) {
    for (int b : {1, 2}) chi(a, b) = 0.5 * sp * sp;
    chi(a, 7) = chi(7, a) = cm * sp * kInvSqrt2;
  }
  for (int a : {5, 6}) {
    for (int b : {5, 6}) chi(a, b) = 0.5 * sm * sm;
    chi(0, a) = chi(a, 0) = sm * cp * kInvSqrt2;
  }
  return ChoiMatrix(chi);
}

Isometry8x2 clone_isometry_general(double alpha_plus, double alpha_minus,
                                   double beta_plus, double beta_minus) {
  const double cp = std::cos(alpha_plus);
  const double sp = std::sin(alpha_plus);
  const double cm = std::cos(alpha_minus);
  const double sm = std::sin(alpha_minus);
  Isometry8x2 v = Isometry8x2::Zero();
  v(1, 0) = cp * std::cos(beta_plus);
  v(7, 0) = cp * std::sin(beta_plus);
  v(2, 0) = v(4, 0) = sp * kInvSqrt2;
  v(6, 1) = cm * std::cos(beta_minus);
  v(0, 1) = cm * std::sin(beta_minus);
  v(3, 1) = v(5, 1) = sm * kInvSqrt2;
  return v;
}

double choi_fidelity(const ChoiMatrix& chi, const MeritOperator& r) {
  if (hermitian_defect(chi.matrix()) > 1e-10 ||
      hermitian_defect(r.matrix()) > 1e-10) {
    throw DomainError("choi_fidelity: non-Hermitian input");
  }
  const cplx tr = (chi.matrix() * r.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-12) {
    throw DomainError("choi_fidelity: trace has a non-negligible imaginary part");
  }
  return tr.real();
}

ChoiMatrix random_cptp(std::uint64_t seed, int env_dim) {
  if (env_dim < 1 || env_dim > 4) {
    throw DomainError("random_cptp: env_dim must lie in [1, 4]");
  }
  const int env = 2 * env_dim;
  const int rows = 4 * env;
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(env_dim)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, 2);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, 2);
  // Make R's diagonal real positive so Q is Haar distributed.
  for (int j = 0; j < 2; ++j) {
    const cplx d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return choi_from_isometry(q, env);
}

Matrix8c symmetry_basis() {
  Matrix8c b = Matrix8c::Zero();
  b(0, 0) = 1.0;                              // |psi psi psi>
  b(5, 1) = b(6, 1) = kInvSqrt2;              // |psi_bar>|Psi+>
  b(7, 2) = 1.0;                              // |psi_bar psi_bar psi_bar>
  b(1, 3) = b(2, 3) = kInvSqrt2;              // |psi>|Psi+>
  b(5, 4) = kInvSqrt2;                        // |psi_bar>|Psi->
  b(6, 4) = -kInvSqrt2;
  b(1, 5) = kInvSqrt2;                        // |psi>|Psi->
  b(2, 5) = -kInvSqrt2;
  b(3, 6) = 1.0;                              // |psi psi_bar psi_bar>
  b(4, 7) = 1.0;                              // |psi_bar psi psi>
  return b;
}

SymmetryBlocks symmetry_blocks(const Matrix8c& m) {
  if (hermitian_defect(m) > 1e-10) {
    throw DomainError("symmetry_blocks: matrix is not Hermitian");
  }
  const Matrix8c b = symmetry_basis();
  Matrix8c t = b.adjoint() * m * b;
  SymmetryBlocks out;
  out.first = t.block<2, 2>(0, 0);
  out.second = t.block<2, 2>(2, 2);
  for (int k = 0; k < 4; ++k) out.scalars[k] = t(4 + k, 4 + k).real();
  t.block<2, 2>(0, 0).setZero();
  t.block<2, 2>(2, 2).setZero();
  for (int k = 4; k < 8; ++k) t(k, k) = 0.0;
  out.off_block_norm = t.norm();
  return out;
}

ChoiMatrix choi_from_family(const FamilyParams& params) {
  return ChoiMatrix(family_matrix(params.data()).cast<cplx>());
}

StructuredOptimum constrained_maximize(const MeritOperator& r, int starts,
                                       std::uint64_t seed) {
  FamilyProblem problem{r.matrix().transpose().real()};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  std::array<double, 8> best{};
  double best_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(starts, 1); ++s) {
    std::array<double, 8> t;
    for (double& v : t) v = angle(rng);
    double value = nelder_mead(problem, t, 0.5);
    // Restart from the incumbent until a fresh simplex stops improving.
    for (int restart = 0; restart < 40; ++restart) {
      const double next = nelder_mead(problem, t, restart < 10 ? 1e-2 : 1e-4);
      const bool stalled = value - next < 1e-15;
      value = std::min(value, next);
      if (stalled && restart >= 2) break;
    }
    if (value < best_value) {
      best_value = value;
      best = t;
    }
  }
  const FamilyParams params = unpack_family(best.data());
  ChoiMatrix chi = choi_from_family(params);
  if (!chi.is_cptp(1e-10)) {
    throw std::logic_error("constrained_maximize: optimum is not CPTP");
  }
  return {choi_fidelity(chi, r), chi, params};
}

double max_sampled_fidelity(const MeritOperator& r, std::uint64_t base_seed,
                            std::size_t n_seeds, std::span<const int> env_dims) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_seeds; ++i) {
    for (int d : env_dims) {
      best = std::max(best, choi_fidelity(random_cptp(base_seed + i, d), r));
    }
  }
  return best;
}

OptimalityReport certify_optimality(const AxisDistribution& dist,
                                    std::string label, std::size_t n_seeds,
                                    std::uint64_t seed,
                                    std::span<const int> env_dims) {
  const MomentPair m = moments(dist);
  const double f_opt = average_fidelity(m, optimal_angles(m));
  const MeritOperator r = build_merit(dist);
  OptimalityReport report;
  report.distribution = std::move(label);
  report.f_opt = f_opt;
  report.max_sampled_f = max_sampled_fidelity(r, seed, n_seeds, env_dims);
  report.n_samples = n_seeds * env_dims.size();
  report.max_structured_f = constrained_maximize(r).fidelity;
  return report;
}

}  // namespace qclone
