// Copyright 2026 The lchsemu Authors
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
#include <map>
#include <string>
#include <vector>

#include "lchs/linalg.hpp"

namespace lchs {

// Qubit ordering convention, asserted by the layout tests: registers occupy
// state-index bits in list order, little-endian. The first register holds the
// least significant bits; qubit 0 of a register is its least significant bit.

constexpr int kMaxEngineQubits = 26;

enum class GateKind { kX, kH, kRy, kRz, kPhase };

std::string gate_kind_name(GateKind k);

struct Control {
  int qubit = 0;
  int value = 1;  // required basis value, 0 or 1

  bool operator==(const Control&) const = default;
};

/// Single-target multi-controlled gate. `angle` is ignored for X and H.
struct StmcGate {
  GateKind kind = GateKind::kX;
  double angle = 0.0;
  int target = 0;
  std::vector<Control> controls;

  StmcGate adjoint() const;
};

struct RegisterLayout {
  struct Entry {
    std::string name;
    int width = 0;
  };

  std::vector<Entry> registers;

  void add(const std::string& name, int width);
  int total_width() const;
  bool has(const std::string& name) const;
  /// First (least significant) qubit id of a register.
  int offset(const std::string& name) const;
  int width(const std::string& name) const;
  /// Qubit ids of a register, least significant first.
  std::vector<int> qubits(const std::string& name) const;
  bool operator==(const RegisterLayout&) const = default;
};

/// Ordered gate list over a fixed register layout. Segments are optional
/// labelled gate ranges used for per-stage gate accounting.
class Circuit {
 public:
  struct Segment {
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  Circuit() = default;
  explicit Circuit(RegisterLayout layout, std::string label = "")
      : layout_(std::move(layout)), label_(std::move(label)) {}

  const RegisterLayout& layout() const { return layout_; }
  const std::string& label() const { return label_; }
  const std::vector<StmcGate>& gates() const { return gates_; }
  const std::vector<Segment>& segments() const { return segments_; }

  void add(StmcGate g);
  void add(GateKind kind, double angle, int target,
           std::vector<Control> controls = {});
  /// Appends another circuit over the same layout.
  void append(const Circuit& other);
  /// Appends `other` with an extra control on every gate.
  void append_controlled(const Circuit& other, Control extra);
  void mark_segment(const std::string& label, std::size_t begin);

  Circuit adjoint() const;

 private:
  RegisterLayout layout_;
  std::string label_;
  std::vector<StmcGate> gates_;
  std::vector<Segment> segments_;
};

struct StateVector {
  RegisterLayout layout;
  std::vector<Complex> amps;

  static StateVector zero_state(const RegisterLayout& layout);
  static StateVector basis_state(const RegisterLayout& layout,
                                 std::uint64_t index);

  std::size_t size() const { return amps.size(); }
  double norm() const;
};

/// Applies one gate in place.
void apply_gate(const StmcGate& g, StateVector* s);

/// Applies the circuit's gates in order; returns the evolved state.
StateVector apply(const Circuit& c, const StateVector& s);
void apply_in_place(const Circuit& c, StateVector* s);

/// Column of the circuit unitary for one computational basis input.
StateVector apply_to_basis(const Circuit& c, std::uint64_t index);

/// Full circuit unitary, built column by column. Requires width <= 14.
Matrix circuit_to_matrix(const Circuit& c);

/// Projects the given qubits onto |0>, without renormalizing.
/// Returns the squared projected norm.
double project_zero(StateVector* s, const std::vector<int>& qubits);

/// Projects onto |0...0> of the given qubits and renormalizes.
/// Returns the renormalized state and the success probability.
std::pair<StateVector, double> postselect_zero(const StateVector& s,
                                               const std::vector<int>& qubits);

struct StmcCounts {
  std::map<std::string, std::int64_t> by_kind;
  std::int64_t total = 0;
};

StmcCounts count_stmc(const Circuit& c);
/// Gate tallies restricted to one labelled segment.
StmcCounts count_stmc_segment(const Circuit& c, const std::string& label);

/// Line-oriented text dump, one gate per line: kind angle target controls+-.
std::string dump_circuit(const Circuit& c);

}  // namespace lchs
