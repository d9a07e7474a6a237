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

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "qclone/commands.hpp"
#include "qclone/error.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kViolation = 3 };

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal 1->2 qubit cloning for axisymmetric ensembles"};
  app.require_subcommand(1);

  std::string dist_text, out_path, format = "json", sweep_text;
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
  double theta = 0.0, phi = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--dist", dist_text, "Distribution spec")->required();
    cmd->add_option("--out", out_path, "Output file (default stdout)");
  };

  auto* params = app.add_subcommand("params", "Optimal cloner parameters");
  add_common(params);
  params->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* sweep = app.add_subcommand("sweep", "Fidelity along a parameter sweep");
  add_common(sweep);
  sweep->add_option("--sweep", sweep_text, "<param>=<start>:<stop>:<n>")
      ->required();
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv"}));

  auto* simulate = app.add_subcommand("simulate", "Simulate one input state");
  add_common(simulate);
  simulate->add_option("--theta", theta, "Polar angle (radians)")->required();
  simulate->add_option("--phi", phi, "Azimuth (radians)");

  auto* verify = app.add_subcommand("verify", "Optimality certification");
  add_common(verify);
  verify->add_option("--samples", samples, "Random maps per environment size")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  auto* circuit = app.add_subcommand("circuit", "Cloning circuit gate list");
  add_common(circuit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (sweep->parsed()) {
      auto base = qclone::DistSpec::parse(dist_text);
      auto spec = qclone::SweepSpec::parse(sweep_text);
      auto rows = qclone::run_sweep(base, spec, std::cerr);
      emit(qclone::sweep_csv(rows), out_path);
      return kOk;
    }
    auto dist = qclone::parse_distribution(dist_text, &std::cerr);
    if (params->parsed()) {
      emit(format == "csv" ? qclone::params_csv(dist)
                           : qclone::dump_json(qclone::cmd_params(dist)),
           out_path);
    } else if (simulate->parsed()) {
      emit(qclone::dump_json(qclone::cmd_simulate(dist, theta, phi)), out_path);
    } else if (verify->parsed()) {
      auto report = qclone::cmd_verify(dist, samples, seed);
      emit(qclone::dump_json(qclone::verify_json(report)), out_path);
      if (!report.sampled_ok()) return kViolation;
    } else if (circuit->parsed()) {
      emit(qclone::dump_json(qclone::cmd_circuit(dist)), out_path);
    }
    return kOk;
  } catch (const qclone::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qclone::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
}
