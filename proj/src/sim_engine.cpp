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

#include "lchs/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lchs {

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::kX: return "x";
    case GateKind::kH: return "h";
    case GateKind::kRy: return "ry";
    case GateKind::kRz: return "rz";
    case GateKind::kPhase: return "phase";
  }
  return "?";
}

StmcGate StmcGate::adjoint() const {
  StmcGate g = *this;
  if (kind == GateKind::kRy || kind == GateKind::kRz ||
      kind == GateKind::kPhase)
    g.angle = -angle;
  return g;
}

void RegisterLayout::add(const std::string& name, int width) {
  if (width <= 0) throw std::invalid_argument("register width must be > 0");
  if (has(name)) throw std::invalid_argument("duplicate register: " + name);
  registers.push_back({name, width});
  if (total_width() > kMaxEngineQubits)
    throw std::invalid_argument("layout exceeds engine qubit limit");
}

int RegisterLayout::total_width() const {
  int n = 0;
  for (const auto& r : registers) n += r.width;
  return n;
}

bool RegisterLayout::has(const std::string& name) const {
  for (const auto& r : registers)
    if (r.name == name) return true;
  return false;
}

int RegisterLayout::offset(const std::string& name) const {
  int off = 0;
  for (const auto& r : registers) {
    if (r.name == name) return off;
    off += r.width;
  }
  throw std::invalid_argument("unknown register: " + name);
}

int RegisterLayout::width(const std::string& name) const {
  for (const auto& r : registers)
    if (r.name == name) return r.width;
  throw std::invalid_argument("unknown register: " + name);
}

std::vector<int> RegisterLayout::qubits(const std::string& name) const {
  int off = offset(name);
  int w = width(name);
  std::vector<int> ids(w);
  for (int i = 0; i < w; ++i) ids[i] = off + i;
  return ids;
}

namespace {

void check_gate(const StmcGate& g, int width) {
  if (g.target < 0 || g.target >= width)
    throw std::invalid_argument("gate target out of range");
  if (!std::isfinite(g.angle))
    throw std::invalid_argument("gate angle must be finite");
  for (const auto& c : g.controls) {
    if (c.qubit < 0 || c.qubit >= width)
      throw std::invalid_argument("gate control out of range");
    if (c.qubit == g.target)
      throw std::invalid_argument("gate control equals target");
    if (c.value != 0 && c.value != 1)
      throw std::invalid_argument("control value must be 0 or 1");
  }
}

}  // namespace

void Circuit::add(StmcGate g) {
  check_gate(g, layout_.total_width());
  gates_.push_back(std::move(g));
}

void Circuit::add(GateKind kind, double angle, int target,
                  std::vector<Control> controls) {
  add(StmcGate{kind, angle, target, std::move(controls)});
}

void Circuit::append(const Circuit& other) {
  if (!(other.layout_ == layout_))
    throw std::invalid_argument("append: layout mismatch");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void Circuit::append_controlled(const Circuit& other, Control extra) {
  if (!(other.layout_ == layout_))
    throw std::invalid_argument("append_controlled: layout mismatch");
  for (StmcGate g : other.gates_) {
    if (g.target == extra.qubit)
      throw std::invalid_argument("append_controlled: control hits a target");
    g.controls.push_back(extra);
    add(std::move(g));
  }
}

void Circuit::mark_segment(const std::string& label, std::size_t begin) {
  segments_.push_back({label, begin, gates_.size()});
}

Circuit Circuit::adjoint() const {
  Circuit out(layout_, label_.empty() ? "" : label_ + "^dag");
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    out.gates_.push_back(it->adjoint());
  return out;
}

StateVector StateVector::zero_state(const RegisterLayout& layout) {
  return basis_state(layout, 0);
}

StateVector StateVector::basis_state(const RegisterLayout& layout,
                                     std::uint64_t index) {
  int n = layout.total_width();
  if (n > kMaxEngineQubits) throw std::invalid_argument("state too wide");
  StateVector s;
  s.layout = layout;
  s.amps.assign(std::size_t{1} << n, Complex(0.0, 0.0));
  if (index >= s.amps.size()) throw std::invalid_argument("basis index out of range");
  s.amps[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

void apply_gate(const StmcGate& g, StateVector* s) {
  const std::int64_t dim = static_cast<std::int64_t>(s->amps.size());
  std::uint64_t on_mask = 0, off_mask = 0;
  for (const auto& c : g.controls) {
    if (c.value)
      on_mask |= std::uint64_t{1} << c.qubit;
    else
      off_mask |= std::uint64_t{1} << c.qubit;
  }
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  Complex* amp = s->amps.data();

  if (g.kind == GateKind::kRz || g.kind == GateKind::kPhase) {
    Complex d0(1.0, 0.0), d1(1.0, 0.0);
    if (g.kind == GateKind::kRz) {
      d0 = std::exp(Complex(0.0, -g.angle / 2.0));
      d1 = std::exp(Complex(0.0, g.angle / 2.0));
    } else {
      d1 = std::exp(Complex(0.0, g.angle));
    }
#pragma omp parallel for schedule(static) if (dim >= (1 << 16))
    for (std::int64_t i = 0; i < dim; ++i) {
      std::uint64_t u = static_cast<std::uint64_t>(i);
      if ((u & on_mask) != on_mask || (u & off_mask) != 0) continue;
      amp[i] *= (u & tbit) ? d1 : d0;
    }
    return;
  }

  Complex m00, m01, m10, m11;
  switch (g.kind) {
    case GateKind::kX:
      m00 = 0.0; m01 = 1.0; m10 = 1.0; m11 = 0.0;
      break;
    case GateKind::kH: {
      double r = 1.0 / std::sqrt(2.0);
      m00 = r; m01 = r; m10 = r; m11 = -r;
      break;
    }
    case GateKind::kRy: {
      double c = std::cos(g.angle / 2.0), sn = std::sin(g.angle / 2.0);
      m00 = c; m01 = -sn; m10 = sn; m11 = c;
      break;
    }
    default:
      throw std::logic_error("unreachable gate kind");
  }

#pragma omp parallel for schedule(static) if (dim >= (1 << 16))
  for (std::int64_t i = 0; i < dim; ++i) {
    std::uint64_t u = static_cast<std::uint64_t>(i);
    if (u & tbit) continue;
    if ((u & on_mask) != on_mask || (u & off_mask) != 0) continue;
    std::int64_t j = static_cast<std::int64_t>(u | tbit);
    Complex a = amp[i], b = amp[j];
    amp[i] = m00 * a + m01 * b;
    amp[j] = m10 * a + m11 * b;
  }
}

void apply_in_place(const Circuit& c, StateVector* s) {
  if (!(c.layout() == s->layout))
    throw std::invalid_argument("apply: layout mismatch");
  for (const auto& g : c.gates()) apply_gate(g, s);
}

StateVector apply(const Circuit& c, const StateVector& s) {
  StateVector out = s;
  apply_in_place(c, &out);
  return out;
}

StateVector apply_to_basis(const Circuit& c, std::uint64_t index) {
  StateVector s = StateVector::basis_state(c.layout(), index);
  apply_in_place(c, &s);
  return s;
}

Matrix circuit_to_matrix(const Circuit& c) {
  int n = c.layout().total_width();
  if (n > 14)
    throw std::invalid_argument("circuit_to_matrix: width must be <= 14");
  const std::int64_t dim = std::int64_t{1} << n;
  Matrix u(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    StateVector s = apply_to_basis(c, static_cast<std::uint64_t>(col));
    for (std::int64_t row = 0; row < dim; ++row) u(row, col) = s.amps[row];
  }
  return u;
}

double project_zero(StateVector* s, const std::vector<int>& qubits) {
  std::uint64_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= s->layout.total_width())
      throw std::invalid_argument("project_zero: qubit out of range");
    mask |= std::uint64_t{1} << q;
  }
  double kept = 0.0;
  for (std::size_t i = 0; i < s->amps.size(); ++i) {
    if (i & mask)
      s->amps[i] = 0.0;
    else
      kept += std::norm(s->amps[i]);
  }
  return kept;
}

std::pair<StateVector, double> postselect_zero(const StateVector& s,
                                               const std::vector<int>& qubits) {
  StateVector out = s;
  double p = project_zero(&out, qubits);
  if (p <= 0.0)
    throw std::runtime_error("postselect_zero: zero projected norm");
  double scale = 1.0 / std::sqrt(p);
  for (auto& a : out.amps) a *= scale;
  return {std::move(out), p};
}

namespace {

void tally(const StmcGate& g, StmcCounts* counts) {
  counts->by_kind[gate_kind_name(g.kind)] += 1;
  counts->total += 1;
}

}  // namespace

StmcCounts count_stmc(const Circuit& c) {
  StmcCounts counts;
  for (const auto& g : c.gates()) tally(g, &counts);
  return counts;
}

StmcCounts count_stmc_segment(const Circuit& c, const std::string& label) {
  StmcCounts counts;
  for (const auto& seg : c.segments()) {
    if (seg.label != label) continue;
    for (std::size_t i = seg.begin; i < seg.end; ++i)
      tally(c.gates()[i], &counts);
  }
  return counts;
}

std::string dump_circuit(const Circuit& c) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& g : c.gates()) {
    os << gate_kind_name(g.kind);
    if (g.kind == GateKind::kRy || g.kind == GateKind::kRz ||
        g.kind == GateKind::kPhase)
      os << ' ' << g.angle;
    os << " q" << g.target;
    for (const auto& ctl : g.controls)
      os << ' ' << (ctl.value ? '+' : '-') << 'q' << ctl.qubit;
    os << '\n';
  }
  return os.str();
}

}  // namespace lchs
