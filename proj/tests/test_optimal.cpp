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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qclone/dist.hpp"
#include "qclone/error.hpp"
#include "qclone/optimal.hpp"

namespace qclone {
namespace {

using namespace qclone::testing;

const double kUcAngle = 0.5 * std::asin(2.0 * kSqrt2 / 3.0);

double gamma_oracle(double a1, double a2) {
  const double xp = 1.0 + 2.0 * a2 + 3.0 * a1;
  const double xm = 1.0 + 2.0 * a2 - 3.0 * a1;
  return 6.0 * kSqrt2 * a1 * (a2 - 1.0) / (xp * xm);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma({0.0, 0.3}), 0.0);
  auto m = moments(AxisDistribution::von_mises_fisher(1.0));
  EXPECT_NEAR(gamma(m), gamma_oracle(m.a1, m.a2), 1e-13);
  EXPECT_NEAR(gamma(m), -6.62, 1e-2);
  EXPECT_THROW(gamma({0.0, -0.5}), DegenerateDenominatorError);
}

TEST(OptimalAngles, UniversalCloner) {
  auto p = optimal_angles({0.0, 0.0});
  EXPECT_EQ(p.regime, Regime::Interior);
  EXPECT_NEAR(p.alpha_plus, 0.6154797, 1e-7);
  EXPECT_NEAR(p.alpha_plus, kUcAngle, 1e-14);
  EXPECT_NEAR(p.alpha_minus, kUcAngle, 1e-14);
  EXPECT_NEAR(std::pow(std::cos(p.alpha_plus), 2), 2.0 / 3.0, 1e-12);
}

TEST(OptimalAngles, EquatorialLimit) {
  auto p = optimal_angles({0.0, -0.5});
  EXPECT_NEAR(p.alpha_plus, kPi / 4, 1e-12);
  EXPECT_NEAR(p.alpha_minus, kPi / 4, 1e-12);
  // Approaching the removable singularity along a1 = 0 is continuous.
  auto q = optimal_angles({0.0, -0.5 + 1e-7});
  EXPECT_NEAR(q.alpha_plus, kPi / 4, 1e-3);
}

TEST(OptimalAngles, PhaseCovariantBranches) {
  auto up = optimal_angles(moments(AxisDistribution::von_mises_fisher(1.0)));
  EXPECT_EQ(up.regime, Regime::PccUpper);
  EXPECT_EQ(up.alpha_plus, 0.0);
  EXPECT_NEAR(up.alpha_minus, kPi / 2, 1e-15);

  auto down =
      optimal_angles(moments(AxisDistribution::von_mises_fisher(-1.0)));
  EXPECT_EQ(down.regime, Regime::PccLower);
  EXPECT_NEAR(down.alpha_plus, kPi / 2, 1e-15);
  EXPECT_EQ(down.alpha_minus, 0.0);
}

TEST(OptimalAngles, PointMassAtPoles) {
  auto north = optimal_angles({1.0, 1.0});
  EXPECT_EQ(north.regime, Regime::PccUpper);
  EXPECT_NEAR(average_fidelity({1.0, 1.0}, north), 1.0, 1e-15);
  auto south = optimal_angles({-1.0, 1.0});
  EXPECT_EQ(south.regime, Regime::PccLower);
  EXPECT_NEAR(average_fidelity({-1.0, 1.0}, south), 1.0, 1e-15);
}

TEST(OptimalAngles, RejectsInfeasibleMoments) {
  EXPECT_THROW(optimal_angles({0.9, -0.5}), InfeasibleMomentsError);
  EXPECT_THROW(optimal_angles({0.0, 1.5}), InfeasibleMomentsError);
}

TEST(OptimalAngles, InteriorInvariants) {
  std::mt19937_64 rng(7);
  int interior = 0;
  for (int i = 0; i < 2000; ++i) {
    auto [a1, a2] = random_moments(rng);
    auto p = optimal_angles({a1, a2});
    EXPECT_GE(p.alpha_plus, 0.0);
    EXPECT_LE(p.alpha_plus, kPi / 2);
    EXPECT_GE(p.alpha_minus, 0.0);
    EXPECT_LE(p.alpha_minus, kPi / 2);
    if (p.regime == Regime::Interior) {
      ++interior;
      EXPECT_LT(std::abs(p.gamma), 1.0);
      EXPECT_NEAR(std::sin(p.angle_sum()), p.omega_value, 1e-12);
    } else {
      EXPECT_GE(std::abs(p.gamma), 1.0);
    }
  }
  EXPECT_GT(interior, 100);
}

TEST(SingleCopyFidelity, Examples) {
  EXPECT_NEAR(single_copy_fidelity(0.0, ClonerParams::pcc_upper()), 1.0,
              1e-15);
  for (double theta = 0.0; theta <= kPi; theta += 0.1)
    EXPECT_NEAR(single_copy_fidelity(theta, ClonerParams::universal()),
                kUcFidelity, 1e-15);
  EXPECT_NEAR(single_copy_fidelity(
                  kPi / 2, ClonerParams::from_angles(kPi / 4, kPi / 4)),
              kEquatorialPcc, 1e-15);
  EXPECT_NEAR(kEquatorialPcc, 0.8535534, 1e-7);
}

TEST(SingleCopyFidelity, MatchesFormulaAndRange) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  for (int i = 0; i < 200; ++i) {
    const double ap = angle(rng), am = angle(rng), theta = 2.0 * angle(rng);
    const double f = single_copy_fidelity(theta, ClonerParams::from_angles(ap, am));
    EXPECT_NEAR(f, fidelity_formula(theta, ap, am), 1e-14);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-15);
  }
}

TEST(SingleCopyFidelity, PccTableRow) {
  for (double theta = 0.0; theta <= kPi; theta += kPi / 16) {
    EXPECT_NEAR(single_copy_fidelity(theta, ClonerParams::pcc_upper()),
                table_pcc(theta, 0.0), 1e-14);
    EXPECT_NEAR(single_copy_fidelity(theta, ClonerParams::pcc_lower()),
                table_pcc(theta, kPi), 1e-14);
  }
}

TEST(AverageFidelity, Examples) {
  EXPECT_NEAR(average_fidelity({0.0, 0.0}, ClonerParams::universal()),
              kUcFidelity, 1e-15);
  EXPECT_NEAR(average_fidelity({0.0, -0.5},
                               ClonerParams::from_angles(kPi / 4, kPi / 4)),
              kEquatorialPcc, 1e-15);
}

TEST(AverageFidelity, MirrorPairMatchesTableRow) {
  for (double theta : {kPi / 6, kPi / 3, 1.2}) {
    auto m = moments(AxisDistribution::delta_pair(theta));
    auto p = optimal_angles(m);
    EXPECT_NEAR(p.alpha_plus, p.alpha_minus, 1e-10);
    EXPECT_NEAR(average_fidelity(m, p), table_mpcc(theta, p.alpha_plus),
                1e-10);
  }
}

TEST(AverageFidelity, MomentReductionMatchesDirectIntegral) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    AxisDistribution d = AxisDistribution::uniform();
    switch (i % 4) {
      case 0: d = AxisDistribution::von_mises_fisher(-4.0 + 8.0 * u(rng)); break;
      case 1: d = AxisDistribution::henyey_greenstein(-0.7 + 1.4 * u(rng)); break;
      case 2: {
        const double P = 0.9 * u(rng);
        d = AxisDistribution::brosseau(P, P * (2.0 * u(rng) - 1.0));
        break;
      }
      case 3: {
        const double t1 = 1.5 * u(rng);
        d = AxisDistribution::belt(t1, t1 + 0.1 + 1.5 * u(rng));
        break;
      }
    }
    const double ap = kPi / 2 * u(rng), am = kPi / 2 * u(rng);
    const auto breaks = density_breakpoints(d);
    double direct = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      direct += simpson(
          [&](double x) {
            return marginal_density(d, x) * fidelity_formula(std::acos(x), ap, am);
          },
          breaks[k], breaks[k + 1], 20000);
    }
    EXPECT_NEAR(average_fidelity(moments(d), ClonerParams::from_angles(ap, am)),
                direct, 1e-9)
        << i;
  }
}

TEST(NumericOptimum, Examples) {
  EXPECT_NEAR(numeric_optimum({0.0, 0.0}).fidelity, kUcFidelity, 1e-9);
  EXPECT_NEAR(numeric_optimum({0.0, -0.5}).fidelity, kEquatorialPcc, 1e-9);
  auto m = moments(AxisDistribution::von_mises_fisher(0.2));
  EXPECT_NEAR(numeric_optimum(m).fidelity,
              average_fidelity(m, optimal_angles(m)), 1e-8);
}

TEST(NumericOptimum, AgreesWithAnalyticOptimum) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto [a1, a2] = random_moments(rng);
    MomentPair m{a1, a2};
    const double analytic = average_fidelity(m, optimal_angles(m));
    const double numeric = numeric_optimum(m).fidelity;
    EXPECT_NEAR(analytic, numeric, 1e-7) << a1 << " " << a2;
    EXPECT_GE(analytic, numeric - 1e-12) << a1 << " " << a2;
  }
}

TEST(AverageFidelity, OptimumDominatesReferenceCloners) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    auto [a1, a2] = random_moments(rng);
    MomentPair m{a1, a2};
    const double f = average_fidelity(m, optimal_angles(m));
    for (const auto& ref : {ClonerParams::universal(), ClonerParams::pcc_upper(),
                            ClonerParams::pcc_lower()})
      EXPECT_GE(f, average_fidelity(m, ref) - 1e-12);
    EXPECT_GE(f, 0.5);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(AverageFidelity, ContinuousAcrossBranchSwitch) {
  auto gamma_of = [](double kappa) {
    return gamma(moments(AxisDistribution::von_mises_fisher(kappa)));
  };
  auto f = [](double kappa) {
    auto m = moments(AxisDistribution::von_mises_fisher(kappa));
    return average_fidelity(m, optimal_angles(m));
  };
  // Bisection for |Gamma| = 1 along the family.
  double lo = 0.2, hi = 0.5;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::abs(gamma_of(mid)) < 1.0 ? lo : hi) = mid;
  }
  const double k0 = 0.5 * (lo + hi);
  EXPECT_NEAR(k0, 0.3305, 1e-4);
  EXPECT_LE(std::abs(f(k0 + 1e-7) - f(k0 - 1e-7)), 1e-6);
  // No jump hidden in a coarser step: the change is what the slope predicts.
  const double slope = (f(k0 + 2e-4) - f(k0 + 1e-4)) / 1e-4;
  const double jump = f(k0 + 1e-4) - f(k0 - 1e-4) - 2e-4 * slope;
  EXPECT_LE(std::abs(jump), 1e-6);
}

}  // namespace
}  // namespace qclone
