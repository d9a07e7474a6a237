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

#include <string_view>

#include "qclone/dist.hpp"

namespace qclone {

enum class Regime {
  Interior,
  PccUpper,  // alpha_plus = 0, alpha_minus = pi/2
  PccLower,  // alpha_plus = pi/2, alpha_minus = 0
};

std::string_view to_string(Regime r);

// Angles of the symmetric cloning isometry
//   |0>|00> -> cos a+ |00>|1> + sin a+ |Psi+>|0>
//   |1>|00> -> cos a- |11>|0> + sin a- |Psi+>|1>
// plus the diagnostics produced while solving for them. gamma and
// omega_value are NaN when the angles were not derived from moments (or,
// for omega_value, when the solution sits on a PCC branch).
struct ClonerParams {
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  double gamma = 0.0;
  double omega_value = 0.0;
  Regime regime = Regime::Interior;

  // Angles supplied directly; the regime is read off the angles.
  static ClonerParams from_angles(double alpha_plus, double alpha_minus);
  static ClonerParams pcc_upper();
  static ClonerParams pcc_lower();
  // Universal cloner: cos^2 alpha = 2/3.
  static ClonerParams universal();

  double angle_sum() const { return alpha_plus + alpha_minus; }
};

// Gamma = 6 sqrt(2) a1 (a2 - 1) / (x+ x-), x+- = 1 + 2 a2 +- 3 a1.
// Throws DegenerateDenominatorError when |x+ x-| < 1e-12.
double gamma(const MomentPair& m);

// Optimal angles for the ensemble with moments m. Throws
// InfeasibleMomentsError for infeasible m.
ClonerParams optimal_angles(const MomentPair& m);

// Fidelity of either clone for an input at polar angle theta from the axis.
double single_copy_fidelity(double theta, const ClonerParams& p);

// Ensemble average of single_copy_fidelity. The fidelity is quadratic in
// cos theta, so the average depends on the moments alone.
double average_fidelity(const MomentPair& m, const ClonerParams& p);

struct NumericOptimum {
  double alpha_plus;
  double alpha_minus;
  double fidelity;
};

// Brute-force maximum of average_fidelity over [0, pi/2]^2: a 400 x 400 grid
// followed by alternating one-dimensional refinements.
NumericOptimum numeric_optimum(const MomentPair& m);

}  // namespace qclone
