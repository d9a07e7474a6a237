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

#include "qclone/dist.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qclone/error.hpp"
#include "qclone/quadrature.hpp"

namespace qclone {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// Langevin function coth(k) - 1/k and 1 - 3 L(k) / k by their Taylor series;
// direct evaluation cancels catastrophically for small k.
constexpr double kSeriesCutoff = 0.5;
constexpr std::array<double, 12> kLangevin = {
    1.0 / 3.0,
    -1.0 / 45.0,
    2.0 / 945.0,
    -1.0 / 4725.0,
    2.0 / 93555.0,
    -1382.0 / 638512875.0,
    4.0 / 18243225.0,
    -3617.0 / 162820783125.0,
    87734.0 / 38979295480125.0,
    -349222.0 / 1531329465290625.0,
    310732.0 / 13447856940643125.0,
    -472728182.0 / 201919571963756521875.0};

MomentPair vmf_moments(double kappa) {
  if (std::abs(kappa) < kSeriesCutoff) {
    const double k2 = kappa * kappa;
    double a1 = 0.0;
    double a2 = 0.0;
    double pow_odd = kappa;  // kappa^(2n-1)
    double pow_even = 1.0;   // kappa^(2n-2)
    for (std::size_t n = 0; n < kLangevin.size(); ++n) {
      a1 += kLangevin[n] * pow_odd;
      if (n > 0) a2 -= 3.0 * kLangevin[n] * pow_even;
      pow_odd *= k2;
      pow_even *= k2;
    }
    return {a1, a2};
  }
  const double a1 = 1.0 / std::tanh(kappa) - 1.0 / kappa;
  return {a1, 1.0 - 3.0 * a1 / kappa};
}

double vmf_density(double kappa, double x) {
  if (kappa == 0.0) return 0.5;
  if (kappa < 0.0) {
    kappa = -kappa;
    x = -x;
  }
  return kappa * std::exp(kappa * (x - 1.0)) / -std::expm1(-2.0 * kappa);
}

// 1 + mu^2 - P^2 - 2 mu x + P^2 x^2, completed around its minimum so that the
// small values near the peak carry no cancellation error as P -> 1.
double brosseau_denominator(double P, double mu, double x) {
  if (P == 0.0) return 1.0 + mu * mu - 2.0 * x * mu;
  const double p2 = P * P;
  const double shift = x - mu / p2;
  return p2 * shift * shift + (P - mu) * (P + mu) * (1.0 - P) * (1.0 + P) / p2;
}

// Location of the density peak, which sharpens as P -> 1.
std::vector<double> brosseau_breaks(double P, double mu) {
  std::vector<double> breaks = {-1.0};
  if (P > 0.0) {
    const double peak = mu / (P * P);
    if (peak > -1.0 && peak < 1.0) breaks.push_back(peak);
  }
  breaks.push_back(1.0);
  return breaks;
}

void validate_brosseau(double P, double mu) {
  require(std::isfinite(P) && std::isfinite(mu),
          "brosseau: parameters must be finite");
  require(P >= 0.0 && P < 1.0,
          "brosseau: P must lie in [0, 1); P = 1 is a point mass, use delta");
  require(mu * mu <= P * P, "brosseau: requires mu^2 <= P^2");
}

double tabulated_density(const kind::Tabulated& t, double x) {
  if (x < t.x.front() || x > t.x.back()) return 0.0;
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  if (it == t.x.end()) return t.g.back();
  const auto i = static_cast<std::size_t>(it - t.x.begin());
  const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
  return (1.0 - w) * t.g[i - 1] + w * t.g[i];
}

MomentPair checked(MomentPair m, const char* source) {
  if (!validate_moments(m)) {
    std::ostringstream os;
    os.precision(17);
    os << source << ": infeasible moments (a1 = " << m.a1 << ", a2 = " << m.a2
       << ")";
    throw InfeasibleMomentsError(os.str());
  }
  return m;
}

}  // namespace

bool validate_moments(const MomentPair& m) {
  if (!std::isfinite(m.a1) || !std::isfinite(m.a2)) return false;
  return std::abs(m.a1) <= 1.0 + kMomentSlack && m.a2 <= 1.0 + kMomentSlack &&
         m.second_raw() >= m.a1 * m.a1 - kMomentSlack;
}

double legendre_poly(int n, double x) {
  if (n < 0 || n > 64) throw DomainError("legendre_poly: n must be in [0, 64]");
  if (!(std::abs(x) <= 1.0)) throw DomainError("legendre_poly: |x| > 1");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

AxisDistribution AxisDistribution::uniform() {
  return AxisDistribution(kind::Uniform{});
}

AxisDistribution AxisDistribution::von_mises_fisher(double kappa) {
  require(std::isfinite(kappa), "vmf: kappa must be finite");
  return AxisDistribution(kind::VonMisesFisher{kappa});
}

AxisDistribution AxisDistribution::brosseau(double P, double mu) {
  validate_brosseau(P, mu);
  return AxisDistribution(kind::Brosseau{P, mu});
}

AxisDistribution AxisDistribution::henyey_greenstein(double h) {
  require(h > -1.0 && h < 1.0, "hg: h must lie in (-1, 1)");
  return AxisDistribution(kind::HenyeyGreenstein{h});
}

AxisDistribution AxisDistribution::delta(double theta) {
  require(theta >= 0.0 && theta <= std::numbers::pi,
          "delta: theta must lie in [0, pi]");
  return AxisDistribution(kind::Delta{theta});
}

AxisDistribution AxisDistribution::delta_pair(double theta) {
  require(theta >= 0.0 && theta <= std::numbers::pi,
          "deltapair: theta must lie in [0, pi]");
  return AxisDistribution(kind::DeltaPair{theta});
}

AxisDistribution AxisDistribution::belt(double theta1, double theta2) {
  require(theta1 >= 0.0 && theta2 <= std::numbers::pi && theta1 < theta2,
          "belt: requires 0 <= theta1 < theta2 <= pi");
  require(std::cos(theta1) > std::cos(theta2),
          "belt: latitudes too close to resolve");
  return AxisDistribution(kind::Belt{theta1, theta2});
}

AxisDistribution AxisDistribution::tabulated(std::vector<double> x,
                                             std::vector<double> g,
                                             std::string source) {
  require(x.size() == g.size(), "table: column lengths differ");
  require(x.size() >= 2, "table: need at least two samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && std::isfinite(g[i]),
            "table: non-finite sample");
    require(x[i] >= -1.0 && x[i] <= 1.0, "table: cos theta outside [-1, 1]");
    require(g[i] >= 0.0, "table: negative density");
    if (i > 0) require(x[i] > x[i - 1], "table: first column must be strictly increasing");
  }
  double raw = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    raw += 0.5 * (g[i] + g[i - 1]) * (x[i] - x[i - 1]);
  }
  require(raw > 0.0, "table: density has zero mass");
  for (double& v : g) v /= raw;
  return AxisDistribution(
      kind::Tabulated{std::move(x), std::move(g), raw, std::move(source)});
}

AxisDistribution AxisDistribution::with_axis(AxisDirection axis) const {
  AxisDistribution copy = *this;
  copy.axis_ = axis;
  return copy;
}

bool AxisDistribution::has_density() const {
  return !std::holds_alternative<kind::Delta>(kind_) &&
         !std::holds_alternative<kind::DeltaPair>(kind_);
}

double marginal_density(const AxisDistribution& dist, double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("marginal_density: |x| > 1");
  return std::visit(
      overloaded{
          [](const kind::Uniform&) { return 0.5; },
          [x](const kind::VonMisesFisher& k) { return vmf_density(k.kappa, x); },
          [x](const kind::Brosseau& k) {
            const double d = brosseau_denominator(k.P, k.mu, x);
            return (1.0 - k.P) * (1.0 + k.P) * (1.0 - k.mu * x) /
                   (2.0 * d * std::sqrt(d));
          },
          [x](const kind::HenyeyGreenstein& k) {
            const double d = (1.0 - k.h) * (1.0 - k.h) + 2.0 * k.h * (1.0 - x);
            return (1.0 - k.h) * (1.0 + k.h) / (2.0 * d * std::sqrt(d));
          },
          [](const kind::Delta&) -> double {
            throw UnsupportedKindError("delta distribution has no density");
          },
          [](const kind::DeltaPair&) -> double {
            throw UnsupportedKindError("deltapair distribution has no density");
          },
          [x](const kind::Belt& k) {
            const double hi = std::cos(k.theta1);
            const double lo = std::cos(k.theta2);
            return (x >= lo && x <= hi) ? 1.0 / (hi - lo) : 0.0;
          },
          [x](const kind::Tabulated& k) { return tabulated_density(k, x); },
      },
      dist.kind());
}

std::vector<double> density_breakpoints(const AxisDistribution& dist) {
  return std::visit(
      overloaded{
          [](const kind::Brosseau& k) { return brosseau_breaks(k.P, k.mu); },
          [](const kind::Belt& k) {
            return std::vector<double>{std::cos(k.theta2), std::cos(k.theta1)};
          },
          [](const kind::Tabulated& k) { return k.x; },
          [](const kind::Delta&) -> std::vector<double> {
            throw UnsupportedKindError("delta distribution has no density");
          },
          [](const kind::DeltaPair&) -> std::vector<double> {
            throw UnsupportedKindError("deltapair distribution has no density");
          },
          [](const auto&) { return std::vector<double>{-1.0, 1.0}; },
      },
      dist.kind());
}

double brosseau_integral(int n, double P, double mu) {
  if (n < 0 || n > 3) throw DomainError("brosseau_integral: n must be in [0, 3]");
  validate_brosseau(P, mu);
  if (P == 0.0) {
    return quad::integrate(
        [n, mu](double x) {
          const double d = 1.0 + mu * mu - 2.0 * x * mu;
          return std::pow(x, n) / (d * std::sqrt(d));
        },
        -1.0, 1.0);
  }
  // Integrate in the offset u = x - peak, which is exact near the peak where
  // the integrand is largest.
  const double p2 = P * P;
  const double peak = mu / p2;
  const double floor = (P - mu) * (P + mu) * (1.0 - P) * (1.0 + P) / p2;
  auto integrand = [n, p2, peak, floor](double u) {
    const double d = p2 * u * u + floor;
    return std::pow(u + peak, n) / (d * std::sqrt(d));
  };
  std::vector<double> breaks = {-1.0 - peak};
  if (peak > -1.0 && peak < 1.0) breaks.push_back(0.0);
  breaks.push_back(1.0 - peak);
  return quad::integrate_piecewise(integrand, breaks);
}

MomentPair moments_by_quadrature(const AxisDistribution& dist) {
  const auto breaks = density_breakpoints(dist);
  const double a1 = quad::integrate_piecewise(
      [&](double x) { return marginal_density(dist, x) * x; }, breaks);
  const double a2 = quad::integrate_piecewise(
      [&](double x) {
        return marginal_density(dist, x) * 0.5 * (3.0 * x * x - 1.0);
      },
      breaks);
  return {a1, a2};
}

MomentPair moments(const AxisDistribution& dist) {
  return std::visit(
      overloaded{
          [](const kind::Uniform&) {
            return MomentPair{0.0, 0.0};
          },
          [](const kind::VonMisesFisher& k) {
            return checked(vmf_moments(k.kappa), "vmf");
          },
          [](const kind::Brosseau& k) {
            const double scale = (1.0 - k.P) * (1.0 + k.P);
            const double i1 = brosseau_integral(1, k.P, k.mu);
            const double i2 = brosseau_integral(2, k.P, k.mu);
            const double i3 = brosseau_integral(3, k.P, k.mu);
            return checked({0.5 * scale * (i1 - k.mu * i2),
                            0.75 * scale * (i2 - k.mu * i3) - 0.5},
                           "brosseau");
          },
          [](const kind::HenyeyGreenstein& k) {
            return MomentPair{k.h, k.h * k.h};
          },
          [](const kind::Delta& k) {
            const double c = std::cos(k.theta);
            return MomentPair{c, legendre_poly(2, c)};
          },
          [](const kind::DeltaPair& k) {
            return MomentPair{0.0, legendre_poly(2, std::cos(k.theta))};
          },
          [](const kind::Belt& k) {
            const double hi = std::cos(k.theta1);
            const double lo = std::cos(k.theta2);
            return MomentPair{0.5 * (hi + lo),
                              0.5 * (hi * hi + hi * lo + lo * lo - 1.0)};
          },
          [&dist](const kind::Tabulated&) {
            return checked(moments_by_quadrature(dist), "table");
          },
      },
      dist.kind());
}

AxisDistribution load_tabulated_csv(const std::string& path,
                                    std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file '" + path + "'");

  auto parse_number = [](std::string_view text, double& out) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
      text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
      text.remove_suffix(1);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
  };

  std::vector<double> xs;
  std::vector<double> gs;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    double x = 0.0;
    double g = 0.0;
    const bool ok = comma != std::string::npos &&
                    line.find(',', comma + 1) == std::string::npos &&
                    parse_number(std::string_view(line).substr(0, comma), x) &&
                    parse_number(std::string_view(line).substr(comma + 1), g);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected two numeric columns");
    }
    first = false;
    xs.push_back(x);
    gs.push_back(g);
  }
  auto dist = AxisDistribution::tabulated(std::move(xs), std::move(gs), path);
  const double raw = std::get<kind::Tabulated>(dist.kind()).raw_integral;
  if (warnings != nullptr && std::abs(raw - 1.0) > 1e-3) {
    *warnings << "warning: table '" << path << "' integrates to " << raw
              << "; renormalized to 1\n";
  }
  return dist;
}

}  // namespace qclone
