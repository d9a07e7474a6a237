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

#include "qclone/commands.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <ostream>

#include "qclone/circuit.hpp"
#include "qclone/error.hpp"
#include "qclone/qsim.hpp"

namespace qclone {

using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_num(double v) { return fmt::format("{:.17g}", v); }

ordered_json params_fields(const AxisDistribution& dist,
                           const ClonerParams& p, const MomentPair& m) {
  ordered_json j;
  j["distribution"] = format_dist_spec(dist);
  j["a1"] = m.a1;
  j["a2"] = m.a2;
  j["Gamma"] = p.gamma;
  j["Omega"] = p.omega_value;
  j["alpha_plus"] = p.alpha_plus;
  j["alpha_minus"] = p.alpha_minus;
  j["regime"] = std::string(to_string(p.regime));
  j["F_avg"] = average_fidelity(m, p);
  return j;
}

}  // namespace

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json cmd_params(const AxisDistribution& dist) {
  MomentPair m = moments(dist);
  return params_fields(dist, optimal_angles(m), m);
}

std::string params_csv(const AxisDistribution& dist) {
  ordered_json j = cmd_params(dist);
  std::string header, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    if (it->is_number())
      row += csv_num(it->get<double>());
    else if (it->is_null())
      row += "nan";
    else
      row += it->get<std::string>();
  }
  return header + "\n" + row + "\n";
}

std::vector<SweepRow> run_sweep(const DistSpec& base, const SweepSpec& sweep,
                                std::ostream& warnings) {
  // Key validity is checked up front so a typo fails the whole run.
  for (const auto& name : sweep.names) base.with(name, sweep.start);
  std::vector<SweepRow> rows;
  rows.reserve(sweep.count);
  for (int i = 0; i < sweep.count; ++i) {
    SweepRow row{sweep.value(i), {kNaN, kNaN}, {}, kNaN, kNaN, kNaN, false};
    row.params = {kNaN, kNaN, kNaN, kNaN, Regime::Interior};
    try {
      DistSpec spec = base;
      for (const auto& name : sweep.names) spec = spec.with(name, row.param);
      row.moments = moments(spec.build());
      row.params = optimal_angles(row.moments);
      row.f_opt = average_fidelity(row.moments, row.params);
      row.f_uc = average_fidelity(row.moments, ClonerParams::universal());
      row.f_pcc_branch =
          std::max(average_fidelity(row.moments, ClonerParams::pcc_upper()),
                   average_fidelity(row.moments, ClonerParams::pcc_lower()));
      row.ok = true;
    } catch (const std::exception& e) {
      warnings << "warning: row " << i << " (param=" << csv_num(row.param)
               << ") skipped: " << e.what() << "\n";
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "param,a1,a2,Gamma,alpha_plus,alpha_minus,F_opt,F_UC,F_PCC_branch\n";
  for (const auto& r : rows) {
    std::array<double, 9> v = {r.param,          r.moments.a1,
                               r.moments.a2,     r.params.gamma,
                               r.params.alpha_plus, r.params.alpha_minus,
                               r.f_opt,          r.f_uc,
                               r.f_pcc_branch};
    for (std::size_t k = 0; k < v.size(); ++k)
      out += (k ? "," : "") + csv_num(v[k]);
    out += '\n';
  }
  return out;
}

ordered_json cmd_simulate(const AxisDistribution& dist, double theta,
                          double phi) {
  MomentPair m = moments(dist);
  ClonerParams p = optimal_angles(m);
  AxisFrame frame{dist.axis().theta, dist.axis().phi};
  PureQubit local{theta, phi};
  PureQubit global = unrotate_frame(local, frame);
  ThreeQubitState out = apply_clone_in_frame(global, frame, p);

  DensityMatrix rho = DensityMatrix::from_pure(out);
  Eigen::VectorXcd psi = global.amplitudes();
  ordered_json j = params_fields(dist, p, m);
  j["theta"] = theta;
  j["phi"] = phi;
  ordered_json amps = ordered_json::array();
  for (Eigen::Index i = 0; i < out.size(); ++i)
    amps.push_back({out(i).real(), out(i).imag()});
  j["amplitudes"] = amps;
  j["F_clone1"] = partial_trace(rho, {1}).expectation(psi);
  j["F_clone2"] = partial_trace(rho, {2}).expectation(psi);
  j["F_closed_form"] = single_copy_fidelity(theta, p);
  return j;
}

OptimalityReport cmd_verify(const AxisDistribution& dist, std::size_t samples,
                            std::uint64_t seed) {
  if (samples < 1) throw DomainError("samples must be at least 1");
  static constexpr std::array<int, 3> kEnvDims = {1, 2, 4};
  return certify_optimality(dist, format_dist_spec(dist), samples, seed,
                            kEnvDims);
}

ordered_json verify_json(const OptimalityReport& report) {
  ordered_json j;
  j["distribution"] = report.distribution;
  j["F_opt"] = report.f_opt;
  j["max_sampled_F"] = report.max_sampled_f;
  j["n_samples"] = report.n_samples;
  j["max_structured_F"] = report.max_structured_f;
  return j;
}

ordered_json cmd_circuit(const AxisDistribution& dist) {
  MomentPair m = moments(dist);
  ClonerParams p = optimal_angles(m);
  ordered_json j;
  j["params"] = params_fields(dist, p, m);
  j["params"]["omega"] = 2.0 * p.alpha_plus;
  j["params"]["Phi"] = 2.0 * (p.alpha_minus - p.alpha_plus);
  ordered_json gates = ordered_json::array();
  for (const Gate& g : build_circuit(p).gates) {
    ordered_json e;
    e["kind"] = std::string(to_string(g.kind));
    e["params"] = ordered_json::array();
    if (g.kind == GateKind::Ry || g.kind == GateKind::CRy)
      e["params"].push_back(g.angle);
    e["control"] = g.is_controlled() ? ordered_json(g.control) : ordered_json();
    e["target"] = g.target;
    gates.push_back(e);
  }
  j["gates"] = gates;
  return j;
}

}  // namespace qclone
