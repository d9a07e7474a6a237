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

#include "qclone/distspec.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <optional>
#include <type_traits>

#include "qclone/error.hpp"

namespace qclone {

namespace {

struct KindKeys {
  std::string_view name;
  std::vector<std::string_view> required;
};

const std::vector<KindKeys>& kind_table() {
  static const std::vector<KindKeys> table = {
      {"uniform", {}},
      {"vmf", {"kappa"}},
      {"brosseau", {"P", "mu"}},
      {"hg", {"h"}},
      {"delta", {"theta"}},
      {"deltapair", {"theta"}},
      {"belt", {"theta1", "theta2"}},
      {"table", {}},
  };
  return table;
}

const KindKeys* find_kind(std::string_view name) {
  for (const auto& k : kind_table())
    if (k.name == name) return &k;
  return nullptr;
}

bool accepts_key(const KindKeys& k, std::string_view key) {
  if (k.name == "table") return false;
  if (key == "axis_theta" || key == "axis_phi") return true;
  return std::find(k.required.begin(), k.required.end(), key) !=
         k.required.end();
}

double parse_number(std::string_view text, std::size_t position) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw ParseError("invalid number '" + std::string(text) + "'", position);
  if (!std::isfinite(value))
    throw ParseError("non-finite number '" + std::string(text) + "'",
                     position);
  return value;
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

DistSpec DistSpec::parse(std::string_view text) {
  DistSpec spec;
  auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  const KindKeys* kind = find_kind(spec.name);
  if (spec.name.empty()) throw ParseError("missing distribution name", 0);
  if (kind == nullptr)
    throw ParseError("unknown distribution '" + spec.name + "'", 0);
  if (colon == std::string_view::npos) {
    if (spec.name == "table") throw ParseError("table requires a path", 5);
    return spec;
  }
  std::size_t pos = colon + 1;
  if (spec.name == "table") {
    spec.path = std::string(text.substr(pos));
    if (spec.path.empty()) throw ParseError("table requires a path", pos);
    return spec;
  }
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError("expected key=value", pos);
    std::string key(item.substr(0, eq));
    if (!accepts_key(*kind, key))
      throw ParseError("unknown key '" + key + "' for " + spec.name, pos);
    for (const auto& [k, v] : spec.params)
      if (k == key) throw ParseError("duplicate key '" + key + "'", pos);
    double value = parse_number(item.substr(eq + 1), pos + eq + 1);
    spec.params.emplace_back(std::move(key), value);
    pos = comma + 1;
  }
  return spec;
}

DistSpec DistSpec::with(std::string_view key, double value) const {
  const KindKeys* kind = find_kind(name);
  if (kind == nullptr || !accepts_key(*kind, key))
    throw ParseError("unknown key '" + std::string(key) + "' for " + name, 0);
  DistSpec out = *this;
  for (auto& [k, v] : out.params) {
    if (k == key) {
      v = value;
      return out;
    }
  }
  out.params.emplace_back(std::string(key), value);
  return out;
}

AxisDistribution DistSpec::build(std::ostream* warnings) const {
  const KindKeys* kind = find_kind(name);
  if (kind == nullptr) throw ParseError("unknown distribution '" + name + "'", 0);
  auto get = [&](std::string_view key) -> std::optional<double> {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  };
  for (auto key : kind->required)
    if (!get(key))
      throw ParseError("missing key '" + std::string(key) + "' for " + name,
                       name.size());
  auto req = [&](std::string_view key) { return *get(key); };
  try {
    AxisDistribution d = AxisDistribution::uniform();
    if (name == "vmf")
      d = AxisDistribution::von_mises_fisher(req("kappa"));
    else if (name == "brosseau")
      d = AxisDistribution::brosseau(req("P"), req("mu"));
    else if (name == "hg")
      d = AxisDistribution::henyey_greenstein(req("h"));
    else if (name == "delta")
      d = AxisDistribution::delta(req("theta"));
    else if (name == "deltapair")
      d = AxisDistribution::delta_pair(req("theta"));
    else if (name == "belt")
      d = AxisDistribution::belt(req("theta1"), req("theta2"));
    else if (name == "table")
      return load_tabulated_csv(path, warnings);
    AxisDirection axis{get("axis_theta").value_or(0.0),
                       get("axis_phi").value_or(0.0)};
    if (axis.theta != 0.0 || axis.phi != 0.0) d = d.with_axis(axis);
    return d;
  } catch (const DomainError& e) {
    throw ParseError(e.what(), name.size());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), name.size());
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), name.size());
  }
}

std::string DistSpec::str() const {
  if (name == "table") return "table:" + path;
  std::string out = name;
  for (std::size_t i = 0; i < params.size(); ++i)
    out += (i == 0 ? ":" : ",") + params[i].first + "=" + num(params[i].second);
  return out;
}

AxisDistribution parse_distribution(std::string_view text,
                                    std::ostream* warnings) {
  return DistSpec::parse(text).build(warnings);
}

std::string format_dist_spec(const AxisDistribution& dist) {
  std::string out = std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Uniform>)
          return "uniform";
        else if constexpr (std::is_same_v<K, kind::VonMisesFisher>)
          return "vmf:kappa=" + num(k.kappa);
        else if constexpr (std::is_same_v<K, kind::Brosseau>)
          return "brosseau:P=" + num(k.P) + ",mu=" + num(k.mu);
        else if constexpr (std::is_same_v<K, kind::HenyeyGreenstein>)
          return "hg:h=" + num(k.h);
        else if constexpr (std::is_same_v<K, kind::Delta>)
          return "delta:theta=" + num(k.theta);
        else if constexpr (std::is_same_v<K, kind::DeltaPair>)
          return "deltapair:theta=" + num(k.theta);
        else if constexpr (std::is_same_v<K, kind::Belt>)
          return "belt:theta1=" + num(k.theta1) + ",theta2=" + num(k.theta2);
        else
          return "table:" + k.source;
      },
      dist.kind());
  if (std::holds_alternative<kind::Tabulated>(dist.kind())) return out;
  const AxisDirection& axis = dist.axis();
  if (axis.theta != 0.0 || axis.phi != 0.0) {
    out += out.find(':') == std::string::npos ? ":" : ",";
    out += "axis_theta=" + num(axis.theta) + ",axis_phi=" + num(axis.phi);
  }
  return out;
}

SweepSpec SweepSpec::parse(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ParseError("expected <name>=<start>:<stop>:<count>", 0);
  SweepSpec spec{};
  std::size_t pos = 0;
  std::string_view names = text.substr(0, eq);
  while (pos <= names.size()) {
    auto comma = names.find(',', pos);
    if (comma == std::string_view::npos) comma = names.size();
    if (comma == pos) throw ParseError("empty parameter name", pos);
    spec.names.emplace_back(names.substr(pos, comma - pos));
    pos = comma + 1;
  }
  std::size_t c1 = text.find(':', eq + 1);
  std::size_t c2 =
      c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos)
    throw ParseError("expected <start>:<stop>:<count>", eq + 1);
  spec.start = parse_number(text.substr(eq + 1, c1 - eq - 1), eq + 1);
  spec.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), c1 + 1);
  std::string_view count = text.substr(c2 + 1);
  auto [ptr, ec] =
      std::from_chars(count.data(), count.data() + count.size(), spec.count);
  if (count.empty() || ec != std::errc() || ptr != count.data() + count.size())
    throw ParseError("invalid count '" + std::string(count) + "'", c2 + 1);
  if (spec.count < 2) throw ParseError("sweep needs at least 2 points", c2 + 1);
  if (spec.start == spec.stop)
    throw ParseError("sweep start equals stop", eq + 1);
  return spec;
}

double SweepSpec::value(int row) const {
  if (row == count - 1) return stop;
  return start + (stop - start) * row / (count - 1);
}

}  // namespace qclone
