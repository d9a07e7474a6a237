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

// End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
// the exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <fmt/core.h>

#include "oracles.hpp"
#include "qclone/choi.hpp"
#include "qclone/circuit.hpp"
#include "qclone/dist.hpp"
#include "qclone/optimal.hpp"
#include "qclone/qsim.hpp"

namespace {

using namespace qclone;
using namespace qclone::testing;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  fmt::print("{} [{}] {}\n", ok ? "PASS" : "FAIL", id, what);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double optimal_f(const AxisDistribution& d) {
  const auto m = moments(d);
  return average_fidelity(m, optimal_angles(m));
}

// Average over the uniform sphere of the simulated clone-1 fidelity.
double simulated_uniform_average(const ClonerParams& p) {
  return 0.5 * simpson(
                   [&](double t) {
                     return clone_fidelity_sim({t, 0.3}, p, 1) * std::sin(t);
                   },
                   0.0, kPi, 2000);
}

void uc_reduction() {
  const auto d = AxisDistribution::uniform();
  const auto m = moments(d);
  const auto p = optimal_angles(m);
  const double cp = std::pow(std::cos(p.alpha_plus), 2);
  const double cm = std::pow(std::cos(p.alpha_minus), 2);
  const double closed = average_fidelity(m, p);
  const double quad = average_fidelity(moments_by_quadrature(d), p);
  const double sim = simulated_uniform_average(p);
  const double choi = choi_fidelity(choi_from_params(p), build_merit(d));
  const std::array<double, 4> paths = {closed, quad, sim, choi};
  const auto [lo, hi] = std::minmax_element(paths.begin(), paths.end());
  const bool ok = std::abs(cp - 2.0 / 3) <= 1e-10 &&
                  std::abs(cm - 2.0 / 3) <= 1e-10 &&
                  std::abs(closed - kUcFidelity) <= 1e-10 && *hi - *lo <= 1e-9;
  report(1, ok,
         fmt::format("uniform: cos^2 a+ - 2/3 = {:.2e}, cos^2 a- - 2/3 = {:.2e}, "
                     "F - 5/6 = {:.2e} (tol 1e-10); four-path spread {:.2e} "
                     "(tol 1e-9)",
                     cp - 2.0 / 3, cm - 2.0 / 3, closed - kUcFidelity,
                     *hi - *lo));
}

double kappa_star() {
  auto f = [](double kappa) {
    return std::abs(gamma(moments(AxisDistribution::von_mises_fisher(kappa)))) -
           1.0;
  };
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(
      f, 0.1, 1.0, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

void pcc_threshold(double ks) {
  report(2, std::abs(ks - 0.3305) <= 5e-4,
         fmt::format("vMF threshold kappa* = {:.6f} vs 0.3305 (tol 5e-4)", ks));
}

void equatorial_pcc() {
  const auto m = moments(AxisDistribution::delta(kPi / 2));
  const auto p = optimal_angles(m);
  const double f = average_fidelity(m, p);
  const double table = table_pcc(kPi / 2, kPi);
  const bool ok = std::abs(p.alpha_plus - kPi / 4) <= 1e-9 &&
                  std::abs(p.alpha_minus - kPi / 4) <= 1e-9 &&
                  std::abs(f - kEquatorialPcc) <= 1e-9 &&
                  std::abs(f - table) <= 1e-9;
  report(3, ok,
         fmt::format("delta(pi/2): a+ - pi/4 = {:.2e}, a- - pi/4 = {:.2e}, "
                     "F - (4+2sqrt2)/8 = {:.2e}, F - table = {:.2e} (tol 1e-9)",
                     p.alpha_plus - kPi / 4, p.alpha_minus - kPi / 4,
                     f - kEquatorialPcc, f - table));
}

void mpcc_reduction() {
  double worst_angle = 0.0, worst_f = 0.0;
  for (double t : {kPi / 6, kPi / 3, 1.2}) {
    const auto m = moments(AxisDistribution::delta_pair(t));
    const auto p = optimal_angles(m);
    worst_angle =
        std::max(worst_angle, std::abs(p.alpha_plus - p.alpha_minus));
    worst_f = std::max(worst_f, std::abs(average_fidelity(m, p) -
                                         table_mpcc(t, p.alpha_plus)));
  }
  report(4, worst_angle <= 1e-10 && worst_f <= 1e-9,
         fmt::format("deltapair: max |a+ - a-| = {:.2e} (tol 1e-10), "
                     "max |F - table| = {:.2e} (tol 1e-9)",
                     worst_angle, worst_f));
}

void vmf_sweep(double ks) {
  constexpr int kPoints = 301;
  const double step = 3.0 / (kPoints - 1);
  std::vector<double> f(kPoints);
  double switch_at = -1.0;
  bool single_switch = true;
  Regime prev = Regime::Interior;
  for (int i = 0; i < kPoints; ++i) {
    const double kappa = i * step;
    const auto m = moments(AxisDistribution::von_mises_fisher(kappa));
    const auto p = optimal_angles(m);
    f[i] = average_fidelity(m, p);
    if (i == 0 && p.regime != Regime::Interior) single_switch = false;
    if (p.regime != prev) {
      if (prev != Regime::Interior || p.regime != Regime::PccUpper ||
          switch_at >= 0.0) {
        single_switch = false;
      }
      switch_at = kappa;
    }
    prev = p.regime;
  }
  double worst_drop = 0.0;
  for (int i = 1; i < kPoints; ++i) worst_drop = std::max(worst_drop, f[i - 1] - f[i]);
  const bool switch_ok = single_switch && switch_at >= ks &&
                         switch_at - ks <= step;
  const auto m = moments(AxisDistribution::von_mises_fisher(0.2));
  const double margin =
      average_fidelity(m, optimal_angles(m)) -
      std::max(average_fidelity(m, ClonerParams::pcc_upper()),
               average_fidelity(m, ClonerParams::pcc_lower()));
  const bool ok = std::abs(f[0] - kUcFidelity) <= 1e-9 &&
                  worst_drop <= 1e-12 && switch_ok && margin > 1e-6;
  report(5, ok,
         fmt::format("vMF sweep: F(0) - 5/6 = {:.2e} (tol 1e-9), max drop "
                     "{:.2e} (tol 1e-12), Interior->PccUpper at {:.2f} "
                     "(kappa* {:.4f}, step {:.2f}), margin at 0.2 = {:.3e} "
                     "(> 1e-6)",
                     f[0] - kUcFidelity, worst_drop, switch_at, ks, step,
                     margin));
}

void brosseau_sweep() {
  const double f0 = optimal_f(AxisDistribution::brosseau(0.0, 0.0));
  bool dominated = true;
  double worst = -1.0;
  for (double mu : {0.2, 0.5, 0.8}) {
    const double f = optimal_f(AxisDistribution::brosseau(mu, mu));
    const double near_limit = optimal_f(AxisDistribution::brosseau(1.0 - 1e-4, mu));
    const double limit = optimal_f(AxisDistribution::delta(std::acos(mu)));
    worst = std::max({worst, f - near_limit, f - limit});
    dominated = dominated && f <= near_limit && f <= limit;
  }
  const bool ok = std::abs(f0 - kUcFidelity) <= 1e-9 && dominated;
  report(6, ok,
         fmt::format("Brosseau P=mu: F(0) - 5/6 = {:.2e} (tol 1e-9), "
                     "max F - F_limit over mu in {{0.2,0.5,0.8}} = {:.3e} "
                     "(<= 0)",
                     f0 - kUcFidelity, worst));
}

void optimality() {
  const std::vector<std::pair<std::string, AxisDistribution>> refs = {
      {"uniform", AxisDistribution::uniform()},
      {"vmf:kappa=0.2", AxisDistribution::von_mises_fisher(0.2)},
      {"vmf:kappa=1", AxisDistribution::von_mises_fisher(1.0)},
      {"brosseau:P=0.8,mu=0.5", AxisDistribution::brosseau(0.8, 0.5)},
      {"deltapair:theta=pi/3", AxisDistribution::delta_pair(kPi / 3)}};
  const std::array<int, 3> envs = {1, 2, 4};
  double worst_sampled = -1.0, worst_structured = -1.0;
  std::size_t samples = 0;
  for (const auto& [label, d] : refs) {
    const auto r = certify_optimality(d, label, 10000, 42, envs);
    worst_sampled = std::max(worst_sampled, r.max_sampled_f - r.f_opt);
    worst_structured = std::max(worst_structured, r.max_structured_f - r.f_opt);
    samples = r.n_samples;
  }
  report(7, worst_sampled <= 1e-9 && worst_structured <= 1e-7,
         fmt::format("five distributions, {} maps each: max sampled excess "
                     "{:.3e} (tol 1e-9), max structured excess {:.3e} "
                     "(tol 1e-7)",
                     samples, worst_sampled, worst_structured));
}

void circuit_equivalence() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  double worst_cols = 0.0, worst_mpcc = 0.0, worst_cry = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto p = ClonerParams::from_angles(angle(rng), angle(rng));
    const Matrix8c u = circuit_unitary(build_circuit(p));
    const Isometry8x2 v = clone_isometry(p);
    // Input on clone 1, clone 2 and ancilla in |0>: basis indices 0 and 4.
    worst_cols = std::max(worst_cols, (u.col(0) - v.col(0)).cwiseAbs().maxCoeff());
    worst_cols = std::max(worst_cols, (u.col(4) - v.col(1)).cwiseAbs().maxCoeff());

    const auto q = ClonerParams::from_angles(p.alpha_plus, p.alpha_plus);
    Circuit full = build_circuit(q);
    Circuit reduced;
    for (const auto& g : full.gates) {
      if (g.kind == GateKind::CRy) {
        worst_cry = std::max(worst_cry, std::abs(g.angle));
      } else {
        reduced.gates.push_back(g);
      }
    }
    const Matrix8c uf = circuit_unitary(full);
    const Matrix8c ur = circuit_unitary(reduced);
    worst_mpcc = std::max({worst_mpcc, (uf.col(0) - ur.col(0)).cwiseAbs().maxCoeff(),
                           (uf.col(4) - ur.col(4)).cwiseAbs().maxCoeff()});
  }
  report(8, worst_cols <= 1e-12 && worst_cry <= 1e-12 && worst_mpcc <= 1e-12,
         fmt::format("100 random cloners: max column error {:.2e}, with a+ = a-: "
                     "max |CRy angle| {:.2e}, action change without CRy "
                     "{:.2e} (tol 1e-12)",
                     worst_cols, worst_cry, worst_mpcc));
}

void simulation_consistency() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  double worst_formula = 0.0, worst_clones = 0.0, worst_phi = 0.0;
  for (int s = 0; s < 10; ++s) {
    const auto p = ClonerParams::from_angles(angle(rng), angle(rng));
    for (int i = 0; i < 50; ++i) {
      const double t = kPi * i / 49.0;
      const double expect = fidelity_formula(t, p.alpha_plus, p.alpha_minus);
      const double f1 = clone_fidelity_sim({t, 0.0}, p, 1);
      const double f2 = clone_fidelity_sim({t, 0.0}, p, 2);
      worst_formula = std::max(worst_formula, std::abs(f1 - expect));
      worst_clones = std::max(worst_clones, std::abs(f1 - f2));
      for (double phi : {0.7, 2.1, 4.0, 5.9}) {
        worst_phi = std::max({worst_phi,
                              std::abs(clone_fidelity_sim({t, phi}, p, 1) - f1),
                              std::abs(clone_fidelity_sim({t, phi}, p, 2) - f2)});
      }
    }
  }
  report(9, worst_formula <= 1e-12 && worst_clones <= 1e-12 && worst_phi <= 1e-12,
         fmt::format("50 x 10 grid: max |F_sim - formula| {:.2e}, "
                     "max |F1 - F2| {:.2e}, max phi dependence {:.2e} "
                     "(tol 1e-12)",
                     worst_formula, worst_clones, worst_phi));
}

void moment_machinery() {
  double worst = 0.0;
  for (double kappa : {0.1, 0.5, 1.0, 5.0, 20.0}) {
    const auto d = AxisDistribution::von_mises_fisher(kappa);
    const auto closed = moments(d);
    const auto quad = moments_by_quadrature(d);
    worst = std::max({worst, std::abs(closed.a1 - quad.a1),
                      std::abs(closed.a2 - quad.a2)});
  }
  report(10, worst <= 1e-8,
         fmt::format("vMF closed-form vs quadrature moments: max difference "
                     "{:.2e} (tol 1e-8)",
                     worst));
}

}  // namespace

int main() {
  // Any exception is a failure of the criterion that raised it.
  auto guarded = [](int id, auto&& check) {
    try {
      check();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  };
  double ks = 0.0;
  guarded(1, uc_reduction);
  guarded(2, [&] {
    ks = kappa_star();
    pcc_threshold(ks);
  });
  guarded(3, equatorial_pcc);
  guarded(4, mpcc_reduction);
  guarded(5, [&] { vmf_sweep(ks); });
  guarded(6, brosseau_sweep);
  guarded(7, optimality);
  guarded(8, circuit_equivalence);
  guarded(9, simulation_consistency);
  guarded(10, moment_machinery);
  fmt::print("{} of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
