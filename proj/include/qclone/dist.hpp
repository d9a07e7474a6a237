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
#include <variant>
#include <vector>

namespace qclone {

// Legendre moments a1 = <P1(cos theta)>, a2 = <P2(cos theta)> of an
// axisymmetric distribution; a0 = 1 is implicit.
struct MomentPair {
  double a1 = 0.0;
  double a2 = 0.0;

  // Second raw moment <cos^2 theta>.
  double second_raw() const { return (2.0 * a2 + 1.0) / 3.0; }
};

// Tolerance used by validate_moments for the boundary cases (point masses
// sit exactly on (2 a2 + 1) / 3 = a1^2).
inline constexpr double kMomentSlack = 1e-12;

bool validate_moments(const MomentPair& m);

// Pn(x) by the three-term recurrence. Throws DomainError for |x| > 1 or
// n > 64.
double legendre_poly(int n, double x);

// Symmetry-axis direction on the global Bloch sphere.
struct AxisDirection {
  double theta = 0.0;
  double phi = 0.0;

  bool operator==(const AxisDirection&) const = default;
};

namespace kind {

struct Uniform {
  bool operator==(const Uniform&) const = default;
};
struct VonMisesFisher {
  double kappa;
  bool operator==(const VonMisesFisher&) const = default;
};
struct Brosseau {
  double P;
  double mu;
  bool operator==(const Brosseau&) const = default;
};
struct HenyeyGreenstein {
  double h;
  bool operator==(const HenyeyGreenstein&) const = default;
};
// Point mass on the latitude theta (phase-covariant ensemble).
struct Delta {
  double theta;
  bool operator==(const Delta&) const = default;
};
// Equal-weight point masses on the latitudes theta and pi - theta.
struct DeltaPair {
  double theta;
  bool operator==(const DeltaPair&) const = default;
};
// Uniform on the belt theta1 <= theta <= theta2.
struct Belt {
  double theta1;
  double theta2;
  bool operator==(const Belt&) const = default;
};
// Piecewise-linear density between samples (x_i, g_i), x = cos theta,
// renormalized to unit mass. raw_integral is the mass before renormalizing.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> g;
  double raw_integral = 1.0;
  std::string source;
  bool operator==(const Tabulated&) const = default;
};

}  // namespace kind

using DistributionKind =
    std::variant<kind::Uniform, kind::VonMisesFisher, kind::Brosseau,
                 kind::HenyeyGreenstein, kind::Delta, kind::DeltaPair,
                 kind::Belt, kind::Tabulated>;

// An axisymmetric ensemble of pure qubit states. Internally every density is
// the 1-D marginal g(x) in x = cos theta with unit integral over [-1, 1]; the
// bivariate density on the sphere is g(x) / (2 pi).
class AxisDistribution {
 public:
  static AxisDistribution uniform();
  static AxisDistribution von_mises_fisher(double kappa);
  static AxisDistribution brosseau(double P, double mu);
  static AxisDistribution henyey_greenstein(double h);
  static AxisDistribution delta(double theta);
  static AxisDistribution delta_pair(double theta);
  static AxisDistribution belt(double theta1, double theta2);
  // Samples must be strictly increasing in [-1, 1] with g >= 0.
  static AxisDistribution tabulated(std::vector<double> x,
                                    std::vector<double> g,
                                    std::string source = {});

  const DistributionKind& kind() const { return kind_; }
  const AxisDirection& axis() const { return axis_; }
  AxisDistribution with_axis(AxisDirection axis) const;

  // False for the point-mass kinds, which carry no density.
  bool has_density() const;

  bool operator==(const AxisDistribution&) const = default;

 private:
  explicit AxisDistribution(DistributionKind k) : kind_(std::move(k)) {}

  DistributionKind kind_;
  AxisDirection axis_;
};

// g(x), the marginal density in x = cos theta. Throws UnsupportedKindError
// for Delta and DeltaPair.
double marginal_density(const AxisDistribution& dist, double x);

// Points in [-1, 1] where the density may have kinks or jumps, including the
// end points of its support. Quadrature over the density integrates piecewise
// between consecutive breakpoints.
std::vector<double> density_breakpoints(const AxisDistribution& dist);

MomentPair moments(const AxisDistribution& dist);

// (a1, a2) by adaptive quadrature of g * Pn, for density-backed kinds.
MomentPair moments_by_quadrature(const AxisDistribution& dist);

// I_n = int_{-1}^{1} x^n / (1 + mu^2 - P^2 - 2 x mu + x^2 P^2)^{3/2} dx.
double brosseau_integral(int n, double P, double mu);

// Reads a two-column CSV (cos theta, g). A non-numeric first line is taken as
// a header. If the raw integral deviates from 1 by more than 1e-3 a warning is
// written to `warnings` (when non-null).
AxisDistribution load_tabulated_csv(const std::string& path,
                                    std::ostream* warnings);

}  // namespace qclone
