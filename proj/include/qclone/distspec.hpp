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

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qclone/dist.hpp"

namespace qclone {

// Textual distribution description: `name` or `name:key=value[,key=value]`,
// e.g. `vmf:kappa=1.5`, `brosseau:P=0.8,mu=0.5`, `belt:theta1=0.5,theta2=1.2`,
// or `table:<path>`. Every kind except `table` also accepts `axis_theta` and
// `axis_phi`. Angles are in radians.
struct DistSpec {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  std::string path;

  // Syntax and key-name validation only; throws ParseError.
  static DistSpec parse(std::string_view text);

  // Copy with `key` set (added if absent). Throws ParseError for keys the
  // kind does not accept.
  DistSpec with(std::string_view key, double value) const;

  // Checks required keys and parameter ranges; throws ParseError. Table
  // loading warnings go to `warnings` when given.
  AxisDistribution build(std::ostream* warnings = nullptr) const;

  std::string str() const;
};

AxisDistribution parse_distribution(std::string_view text,
                                    std::ostream* warnings = nullptr);

// Canonical spec string; parse_distribution(format_dist_spec(d)) == d.
std::string format_dist_spec(const AxisDistribution& dist);

// `<name>[,<name>...]=<start>:<stop>:<count>`; all listed parameters take the
// same value on each row.
struct SweepSpec {
  std::vector<std::string> names;
  double start;
  double stop;
  int count;

  static SweepSpec parse(std::string_view text);
  double value(int row) const;
};

}  // namespace qclone
