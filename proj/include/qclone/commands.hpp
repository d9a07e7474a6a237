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

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "qclone/choi.hpp"
#include "qclone/dist.hpp"
#include "qclone/distspec.hpp"
#include "qclone/optimal.hpp"

namespace qclone {

// Serializes with 17 significant digits; non-finite values become null.
std::string dump_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json cmd_params(const AxisDistribution& dist);

// CSV header plus one row with the same fields as cmd_params.
std::string params_csv(const AxisDistribution& dist);

struct SweepRow {
  double param;
  MomentPair moments;
  ClonerParams params;
  double f_opt;
  double f_uc;
  double f_pcc_branch;
  bool ok;
};

// Rows in sweep order. A row whose distribution or optimum cannot be formed
// is kept with NaN fields and a line written to `warnings`.
std::vector<SweepRow> run_sweep(const DistSpec& base, const SweepSpec& sweep,
                                std::ostream& warnings);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Input angles are relative to the distribution's symmetry axis.
nlohmann::ordered_json cmd_simulate(const AxisDistribution& dist,
                                    double theta, double phi);

// `samples` random maps per environment dimension in {1, 2, 4}.
OptimalityReport cmd_verify(const AxisDistribution& dist, std::size_t samples,
                            std::uint64_t seed);

nlohmann::ordered_json verify_json(const OptimalityReport& report);

nlohmann::ordered_json cmd_circuit(const AxisDistribution& dist);

}  // namespace qclone
