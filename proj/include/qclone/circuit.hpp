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

#include <string_view>
#include <vector>

#include "qclone/optimal.hpp"
#include "qclone/qsim.hpp"

namespace qclone {

enum class GateKind {
  Ry,    // rotation about y by `angle` on `target`
  CRy,   // controlled Ry(angle)
  CNOT,
  CH,    // controlled Hadamard
  A,     // real involution with A X A = H
  X,
};

std::string_view to_string(GateKind k);

// Qubits are numbered 1..3 with qubit 1 the most significant bit. control is
// 0 for single-qubit gates.
struct Gate {
  GateKind kind;
  int target;
  int control = 0;
  double angle = 0.0;

  static Gate ry(double angle, int target) { return {GateKind::Ry, target, 0, angle}; }
  static Gate cry(double angle, int control, int target) {
    return {GateKind::CRy, target, control, angle};
  }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control}; }
  static Gate ch(int control, int target) { return {GateKind::CH, target, control}; }
  static Gate a(int target) { return {GateKind::A, target}; }
  static Gate x(int target) { return {GateKind::X, target}; }

  bool is_controlled() const { return control != 0; }
};

// Gates in application order. The input qubit enters on qubit 1; qubits 2
// and 3 start in |0>.
struct Circuit {
  std::vector<Gate> gates;
};

// 2x2 matrices of the single-qubit gates.
Matrix2c ry_matrix(double angle);
Matrix2c a_matrix();
Matrix2c hadamard_matrix();

// Gate embedded in the three-qubit space.
Matrix8c gate_matrix(const Gate& g);

// A^(t) CNOT^(c,t) A^(t), which equals the controlled Hadamard.
Matrix8c controlled_hadamard_decomposed(int control, int target);

// Ordered product of gate matrices (first gate rightmost).
Matrix8c circuit_unitary(const Circuit& c);

// CRy(2(a- - a+))^(1,3), Ry(2 a+)^(3), CH^(3,2), CNOT^(1,3), CNOT^(2,1),
// CNOT^(3,2), then X^(3). The first six gates produce the cloning isometry
// with the ancilla flipped; the final X restores the ancilla labelling used by
// clone_isometry.
Circuit build_circuit(const ClonerParams& p);

}  // namespace qclone
