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

#include "qclone/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qclone/error.hpp"

namespace qclone {

namespace {

constexpr int kQubits = 3;

void check_qubit(int q) {
  if (q < 1 || q > kQubits) throw DomainError("gate qubit index must be 1, 2 or 3");
}

int bit(int index, int qubit) { return (index >> (kQubits - qubit)) & 1; }

// Applies u to `target` on every basis state (optionally only where the
// control bit is set).
Matrix8c embed(const Matrix2c& u, int target, int control) {
  check_qubit(target);
  if (control != 0) {
    check_qubit(control);
    if (control == target) throw DomainError("control and target coincide");
  }
  const int mask = 1 << (kQubits - target);
  Matrix8c m = Matrix8c::Zero();
  for (int col = 0; col < 8; ++col) {
    if (control != 0 && bit(col, control) == 0) {
      m(col, col) = 1.0;
      continue;
    }
    const int t = bit(col, target);
    const int base = col & ~mask;
    m(base, col) += u(0, t);
    m(base | mask, col) += u(1, t);
  }
  return m;
}

}  // namespace

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::Ry:
      return "Ry";
    case GateKind::CRy:
      return "CRy";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::CH:
      return "CH";
    case GateKind::A:
      return "A";
    case GateKind::X:
      return "X";
  }
  return "?";
}

Matrix2c ry_matrix(double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  Matrix2c m;
  m << c, -s, s, c;
  return m;
}

Matrix2c a_matrix() {
  const double r = std::numbers::sqrt2;
  const double norm = 1.0 / std::sqrt(4.0 + 2.0 * r);
  Matrix2c m;
  m << norm, (1.0 + r) * norm, (1.0 + r) * norm, -norm;
  return m;
}

Matrix2c hadamard_matrix() {
  const double h = 1.0 / std::numbers::sqrt2;
  Matrix2c m;
  m << h, h, h, -h;
  return m;
}

Matrix8c gate_matrix(const Gate& g) {
  Matrix2c pauli_x;
  pauli_x << 0.0, 1.0, 1.0, 0.0;
  const bool controlled = g.kind == GateKind::CRy || g.kind == GateKind::CNOT ||
                          g.kind == GateKind::CH;
  if (controlled != g.is_controlled()) {
    throw DomainError(std::string(to_string(g.kind)) +
                      (controlled ? " needs a control qubit"
                                  : " takes no control qubit"));
  }
  switch (g.kind) {
    case GateKind::Ry:
      return embed(ry_matrix(g.angle), g.target, 0);
    case GateKind::CRy:
      return embed(ry_matrix(g.angle), g.target, g.control);
    case GateKind::CNOT:
      return embed(pauli_x, g.target, g.control);
    case GateKind::CH:
      return embed(hadamard_matrix(), g.target, g.control);
    case GateKind::A:
      return embed(a_matrix(), g.target, 0);
    case GateKind::X:
      return embed(pauli_x, g.target, 0);
  }
  throw DomainError("unknown gate kind");
}

Matrix8c controlled_hadamard_decomposed(int control, int target) {
  const Matrix8c a = gate_matrix(Gate::a(target));
  return a * gate_matrix(Gate::cnot(control, target)) * a;
}

Matrix8c circuit_unitary(const Circuit& c) {
  Matrix8c u = Matrix8c::Identity();
  for (const Gate& g : c.gates) u = gate_matrix(g) * u;
  return u;
}

Circuit build_circuit(const ClonerParams& p) {
  Circuit c;
  c.gates = {
      Gate::cry(2.0 * (p.alpha_minus - p.alpha_plus), 1, 3),
      Gate::ry(2.0 * p.alpha_plus, 3),
      Gate::ch(3, 2),
      Gate::cnot(1, 3),
      Gate::cnot(2, 1),
      Gate::cnot(3, 2),
      Gate::x(3),
  };
  return c;
}

}  // namespace qclone
