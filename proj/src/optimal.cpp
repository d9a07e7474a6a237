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

#include "qclone/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "qclone/error.hpp"

namespace qclone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kDegenerate = 1e-12;
constexpr double kAngleSlack = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ClonerParams best_pcc_branch(const MomentPair& m, double gamma_value) {
  ClonerParams upper = ClonerParams::pcc_upper();
  ClonerParams lower = ClonerParams::pcc_lower();
  ClonerParams best = average_fidelity(m, upper) >= average_fidelity(m, lower)
                          ? upper
                          : lower;
  best.gamma = gamma_value;
  best.omega_value = kNaN;
  return best;
}

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Interior:
      return "Interior";
    case Regime::PccUpper:
      return "PccUpper";
    case Regime::PccLower:
      return "PccLower";
  }
  return "?";
}

ClonerParams ClonerParams::from_angles(double alpha_plus, double alpha_minus) {
  Regime regime = Regime::Interior;
  if (alpha_plus == 0.0 && alpha_minus == kHalfPi) regime = Regime::PccUpper;
  if (alpha_plus == kHalfPi && alpha_minus == 0.0) regime = Regime::PccLower;
  return {alpha_plus, alpha_minus, kNaN, kNaN, regime};
}

ClonerParams ClonerParams::pcc_upper() { return from_angles(0.0, kHalfPi); }

ClonerParams ClonerParams::pcc_lower() { return from_angles(kHalfPi, 0.0); }

ClonerParams ClonerParams::universal() {
  const double omega = 2.0 * kSqrt2 / 3.0;
  const double a = 0.5 * std::asin(omega);
  return {a, a, 0.0, omega, Regime::Interior};
}

double gamma(const MomentPair& m) {
  const double xp = 1.0 + 2.0 * m.a2 + 3.0 * m.a1;
  const double xm = 1.0 + 2.0 * m.a2 - 3.0 * m.a1;
  if (std::abs(xp * xm) < kDegenerate) {
    throw DegenerateDenominatorError("gamma: x+ x- vanishes");
  }
  return 6.0 * kSqrt2 * m.a1 * (m.a2 - 1.0) / (xp * xm);
}

ClonerParams optimal_angles(const MomentPair& m) {
  if (!validate_moments(m)) {
    throw InfeasibleMomentsError("optimal_angles: infeasible moments");
  }
  const double a1 = m.a1;
  const double a2 = m.a2;
  const double xp = 1.0 + 2.0 * a2 + 3.0 * a1;
  const double xm = 1.0 + 2.0 * a2 - 3.0 * a1;

  if (std::abs(xp * xm) < kDegenerate) {
    if (std::abs(a1) < 1e-6) {
      // (a1, a2) -> (0, -1/2): (1 + 2 a2) cancels between Omega's numerator
      // and sqrt(x+ x-), leaving a finite limit.
      const double sign = (1.0 + 2.0 * a2) < 0.0 ? -1.0 : 1.0;
      const double omega = 2.0 * kSqrt2 * (1.0 - a2) * sign /
                           std::sqrt(3.0 * (3.0 + 4.0 * a2 * a2 - 4.0 * a2));
      const double alpha = 0.5 * std::asin(clamp_unit(omega));
      return {alpha, alpha, 0.0, clamp_unit(omega), Regime::Interior};
    }
    // |Gamma| diverges, except at the poles (a1, a2) = (+-1, 1) where it is
    // 0/0; either way a PCC branch is optimal.
    const double numerator = 6.0 * kSqrt2 * a1 * (a2 - 1.0);
    const double g = std::abs(numerator) > kDegenerate
                         ? std::copysign(std::numeric_limits<double>::infinity(),
                                         numerator)
                         : kNaN;
    return best_pcc_branch(m, g);
  }

  const double g = 6.0 * kSqrt2 * a1 * (a2 - 1.0) / (xp * xm);
  if (std::abs(g) >= 1.0) return best_pcc_branch(m, g);

  double radicand = 3.0 * xp * xm * (3.0 + 4.0 * a2 * a2 - 3.0 * a1 * a1 - 4.0 * a2);
  if (radicand < -1e-9) {
    throw InfeasibleMomentsError("optimal_angles: negative radicand in Omega");
  }
  radicand = std::max(radicand, 0.0);
  const double omega =
      clamp_unit(2.0 * kSqrt2 * (1.0 + 2.0 * a2) * (1.0 - a2) / std::sqrt(radicand));

  const double asin_gamma = std::asin(g);
  const double principal = std::asin(omega);
  ClonerParams best{};
  double best_f = -1.0;
  for (double sum : {principal, kPi - principal}) {
    double ap = 0.5 * (sum + asin_gamma);
    double am = 0.5 * (sum - asin_gamma);
    if (ap < -kAngleSlack || ap > kHalfPi + kAngleSlack ||
        am < -kAngleSlack || am > kHalfPi + kAngleSlack) {
      continue;
    }
    ClonerParams candidate{std::clamp(ap, 0.0, kHalfPi),
                           std::clamp(am, 0.0, kHalfPi), g, omega,
                           Regime::Interior};
    const double f = average_fidelity(m, candidate);
    if (f > best_f) {
      best_f = f;
      best = candidate;
    }
  }
  if (best_f < 0.0) {
    throw std::logic_error("optimal_angles: no admissible arcsin branch");
  }
  return best;
}

double single_copy_fidelity(double theta, const ClonerParams& p) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double c2 = c * c;
  const double s2 = s * s;
  const double sin_t = std::sin(theta);
  const double sp = std::sin(p.alpha_plus);
  const double sm = std::sin(p.alpha_minus);
  return (2.0 * (3.0 + std::cos(2.0 * p.alpha_plus)) * c2 * c2 +
          2.0 * (3.0 + std::cos(2.0 * p.alpha_minus)) * s2 * s2 +
          (sp * sp + sm * sm + 2.0 * kSqrt2 * std::sin(p.angle_sum())) *
              sin_t * sin_t) /
         8.0;
}

double average_fidelity(const MomentPair& m, const ClonerParams& p) {
  // <cos^4(theta/2)>, <sin^4(theta/2)>, <sin^2 theta> from a1 and <cos^2>.
  const double m2 = m.second_raw();
  const double upper = (1.0 + 2.0 * m.a1 + m2) / 4.0;
  const double lower = (1.0 - 2.0 * m.a1 + m2) / 4.0;
  const double transverse = 1.0 - m2;
  const double sp = std::sin(p.alpha_plus);
  const double sm = std::sin(p.alpha_minus);
  return (2.0 * (3.0 + std::cos(2.0 * p.alpha_plus)) * upper +
          2.0 * (3.0 + std::cos(2.0 * p.alpha_minus)) * lower +
          (sp * sp + sm * sm + 2.0 * kSqrt2 * std::sin(p.angle_sum())) *
              transverse) /
         8.0;
}

NumericOptimum numeric_optimum(const MomentPair& m) {
  auto f = [&m](double ap, double am) {
    return average_fidelity(m, ClonerParams::from_angles(ap, am));
  };

  constexpr int kGrid = 400;
  const double step = kHalfPi / (kGrid - 1);
  double best_ap = 0.0;
  double best_am = 0.0;
  double best_f = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double v = f(i * step, j * step);
      if (v > best_f) {
        best_f = v;
        best_ap = i * step;
        best_am = j * step;
      }
    }
  }

  // Alternate 1-D Brent searches in a bracket around the incumbent.
  constexpr int kBits = 52;
  const double width = 2.0 * step;
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double before = best_f;
    {
      const double lo = std::max(0.0, best_ap - width);
      const double hi = std::min(kHalfPi, best_ap + width);
      auto [x, neg] = boost::math::tools::brent_find_minima(
          [&](double a) { return -f(a, best_am); }, lo, hi, kBits);
      if (-neg > best_f) {
        best_f = -neg;
        best_ap = x;
      }
    }
    {
      const double lo = std::max(0.0, best_am - width);
      const double hi = std::min(kHalfPi, best_am + width);
      auto [x, neg] = boost::math::tools::brent_find_minima(
          [&](double a) { return -f(best_ap, a); }, lo, hi, kBits);
      if (-neg > best_f) {
        best_f = -neg;
        best_am = x;
      }
    }
    if (best_f - before < 1e-13) break;
  }
  // Brent never evaluates the bracket ends; the optimum may sit on the edge.
  for (double ap : {0.0, kHalfPi, best_ap}) {
    for (double am : {0.0, kHalfPi, best_am}) {
      const double v = f(ap, am);
      if (v > best_f) {
        best_f = v;
        best_ap = ap;
        best_am = am;
      }
    }
  }
  return {best_ap, best_am, best_f};
}

}  // namespace qclone
