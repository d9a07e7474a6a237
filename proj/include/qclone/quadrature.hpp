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

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <type_traits>

#include "qclone/error.hpp"

namespace qclone::quad {

inline constexpr int kNodes = 64;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kDefaultMaxDepth = 20;

struct GaussLegendreRule {
  std::array<double, kNodes> nodes;
  std::array<double, kNodes> weights;
};

// 64-point Gauss-Legendre rule on [-1, 1], computed once by Newton iteration.
const GaussLegendreRule& gauss_legendre_64();

namespace detail {

template <class T>
double magnitude(const T& value) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(value);
  } else {
    return value.cwiseAbs().maxCoeff();
  }
}

template <class F>
using value_t = std::decay_t<std::invoke_result_t<F&, double>>;

template <class F>
value_t<F> apply_rule(F& f, double a, double b) {
  const auto& rule = gauss_legendre_64();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  value_t<F> sum = f(mid + half * rule.nodes[0]) * rule.weights[0];
  for (int i = 1; i < kNodes; ++i) {
    sum += f(mid + half * rule.nodes[i]) * rule.weights[i];
  }
  return value_t<F>(sum * half);
}

template <class F, class T>
T refine(F& f, double a, double b, const T& whole, double tol, int depth,
         int max_depth) {
  const double m = 0.5 * (a + b);
  T left = apply_rule(f, a, m);
  T right = apply_rule(f, m, b);
  T both = left + right;
  const double err = magnitude(T(both - whole));
  // Absolute tolerance, floored at what double rounding can resolve.
  const double floor = 256.0 * std::numeric_limits<double>::epsilon() *
                       magnitude(both);
  if (err <= tol || err <= floor) return both;
  if (depth >= max_depth) {
    throw ConvergenceError("adaptive quadrature did not reach tolerance on [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  T l = refine(f, a, m, left, 0.5 * tol, depth + 1, max_depth);
  T r = refine(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
  return T(l + r);
}

}  // namespace detail

// Integrates f over [a, b] by interval halving on a 64-node Gauss-Legendre
// base rule. f may return a scalar or an Eigen matrix; the error measure for
// matrices is the largest absolute entry.
template <class F>
auto integrate(F&& f, double a, double b, double tol = kDefaultTolerance,
               int max_depth = kDefaultMaxDepth) {
  using T = detail::value_t<F>;
  T whole = detail::apply_rule(f, a, b);
  return detail::refine(f, a, b, whole, tol, 0, max_depth);
}

// Sums integrate() over consecutive segments of a sorted breakpoint list.
template <class F>
auto integrate_piecewise(F&& f, std::span<const double> breaks,
                         double tol = kDefaultTolerance,
                         int max_depth = kDefaultMaxDepth) {
  const double share = tol / static_cast<double>(breaks.size() - 1);
  auto total = integrate(f, breaks[0], breaks[1], share, max_depth);
  for (std::size_t i = 2; i < breaks.size(); ++i) {
    total += integrate(f, breaks[i - 1], breaks[i], share, max_depth);
  }
  return total;
}

}  // namespace qclone::quad
