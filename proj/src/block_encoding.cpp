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

#include "lchs/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lchs {

namespace {
constexpr double kPi = std::numbers::pi;
}

void BandedSpec::validate_hermitian() const {
  if (!periodic)
    throw std::invalid_argument("BandedSpec: only periodic wrap is supported");
  for (const auto& [off, val] : diagonals) {
    if (off < -1 || off > 1)
      throw std::invalid_argument("BandedSpec: offsets limited to {-1,0,+1}");
    (void)val;
  }
  Complex m0 = diagonals.count(0) ? diagonals.at(0) : Complex(0.0);
  Complex mm = diagonals.count(-1) ? diagonals.at(-1) : Complex(0.0);
  Complex mp = diagonals.count(1) ? diagonals.at(1) : Complex(0.0);
  if (std::abs(m0.imag()) > 1e-14 * std::max(1.0, std::abs(m0)))
    throw std::invalid_argument("BandedSpec: diagonal must be real");
  if (std::abs(mm - std::conj(mp)) > 1e-13 * std::max(1.0, std::abs(mp)))
    throw std::invalid_argument("BandedSpec: off-diagonals must be conjugate");
}

Matrix BandedSpec::to_matrix(int n_x) const {
  const int n = 1 << n_x;
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [off, val] : diagonals) {
    for (int i = 0; i < n; ++i) {
      int col = ((i + off) % n + n) % n;
      m(i, col) += val;
    }
  }
  return m;
}

BlockEncoding sine_circuit(const RegisterLayout& layout,
                           const std::string& rk_reg,
                           const std::string& sin_reg) {
  const int n_k = layout.width(rk_reg);
  if (layout.width(sin_reg) != 1)
    throw std::invalid_argument("sine_circuit: a_sin must be one qubit");
  const double nk = static_cast<double>(std::int64_t{1} << n_k);
  const double a0 = -kPi / 2.0;
  const double a1 = (kPi / 2.0) * nk / (nk - 1.0);
  const int target = layout.offset(sin_reg);
  const std::vector<int> rk = layout.qubits(rk_reg);

  BlockEncoding be;
  be.circuit = Circuit(layout, "U_sin");
  be.circuit.add(GateKind::kRy, 2.0 * a0, target);
  // Ladder index l pairs with the r_k bit of significance 2^{n_k-1-l}.
  for (int l = 0; l < n_k; ++l)
    be.circuit.add(GateKind::kRy, 2.0 * a1 / std::pow(2.0, l), target,
                   {{rk[n_k - 1 - l], 1}});
  be.circuit.add(GateKind::kX, 0.0, target);
  be.alpha = 1.0;
  be.ancillas = {target};
  return be;
}

namespace {

struct Branch {
  bool present = false;
  Complex m = 0.0;
  double eta = 0.0;
};

// a_x branch codes: 0 = diagonal, 1 = sub-diagonal (INC), 2 = super (DEC).
constexpr std::uint64_t kCodeDiag = 0, kCodeSub = 1, kCodeSuper = 2;

std::vector<Control> code_controls(const std::vector<int>& ax,
                                   std::uint64_t code) {
  return {{ax[0], static_cast<int>(code & 1)},
          {ax[1], static_cast<int>((code >> 1) & 1)}};
}

// e^{i angle} on the subspace where all conditions hold, emitted as a Phase
// gate (with an X sandwich when every condition wants value 0).
void append_subspace_phase(Circuit* c, double angle,
                           std::vector<Control> conds) {
  if (conds.empty())
    throw std::invalid_argument("subspace phase needs at least one condition");
  auto it = std::find_if(conds.begin(), conds.end(),
                         [](const Control& x) { return x.value == 1; });
  if (it != conds.end()) {
    Control tgt = *it;
    conds.erase(it);
    c->add(GateKind::kPhase, angle, tgt.qubit, conds);
    return;
  }
  Control tgt = conds.back();
  conds.pop_back();
  c->add(GateKind::kX, 0.0, tgt.qubit);
  std::vector<Control> rest = conds;
  c->add(GateKind::kPhase, angle, tgt.qubit, rest);
  c->add(GateKind::kX, 0.0, tgt.qubit);
}

// Rotation tree preparing real amplitudes (a0, a1, a2) on a_x codes 0..2.
void append_ax_prep(Circuit* c, const std::vector<int>& ax, double a0,
                    double a1, double a2) {
  double low = std::sqrt(a0 * a0 + a1 * a1);
  double split = 2.0 * std::atan2(a2, low);
  if (split != 0.0) c->add(GateKind::kRy, split, ax[1]);
  double inner = 2.0 * std::atan2(a1, a0);
  if (inner != 0.0) c->add(GateKind::kRy, inner, ax[0], {{ax[1], 0}});
}

}  // namespace

void append_incrementer(Circuit* c, const std::vector<int>& reg_qubits) {
  const int n = static_cast<int>(reg_qubits.size());
  for (int b = n - 1; b >= 1; --b) {
    std::vector<Control> ctls;
    for (int lo = 0; lo < b; ++lo) ctls.push_back({reg_qubits[lo], 1});
    c->add(GateKind::kX, 0.0, reg_qubits[b], ctls);
  }
  c->add(GateKind::kX, 0.0, reg_qubits[0]);
}

void append_decrementer(Circuit* c, const std::vector<int>& reg_qubits) {
  const int n = static_cast<int>(reg_qubits.size());
  c->add(GateKind::kX, 0.0, reg_qubits[0]);
  for (int b = 1; b <= n - 1; ++b) {
    std::vector<Control> ctls;
    for (int lo = 0; lo < b; ++lo) ctls.push_back({reg_qubits[lo], 1});
    c->add(GateKind::kX, 0.0, reg_qubits[b], ctls);
  }
}

void append_neg_reflection_about_zero(Circuit* c,
                                      const std::vector<int>& qubits) {
  if (qubits.empty())
    throw std::invalid_argument("reflection needs at least one qubit");
  std::vector<Control> conds;
  for (int q : qubits) conds.push_back({q, 0});
  append_subspace_phase(c, kPi, conds);
}

void append_reflection_about_zero(Circuit* c, const std::vector<int>& qubits) {
  append_neg_reflection_about_zero(c, qubits);
  c->add(GateKind::kRz, 2.0 * kPi, qubits[0]);  // global -1
}

BlockEncoding be_banded_hermitian(const RegisterLayout& layout,
                                  const BandedSpec& spec,
                                  const EtaOverrides& etas,
                                  const std::string& sys_reg,
                                  const std::string& ax_reg,
                                  const std::string& ae_reg) {
  spec.validate_hermitian();
  if (layout.width(ax_reg) != 2)
    throw std::invalid_argument("be_banded_hermitian: a_x must be two qubits");

  auto get = [&](int off) {
    return spec.diagonals.count(off) ? spec.diagonals.at(off) : Complex(0.0);
  };
  Branch diag{false, get(0), 0.0};
  Branch sub{false, get(-1), 0.0};
  Branch super{false, get(1), 0.0};
  diag.eta = etas.eta_0.value_or(std::abs(diag.m));
  sub.eta = etas.eta_m1.value_or(std::abs(sub.m));
  super.eta = etas.eta_p1.value_or(std::abs(super.m));
  if (std::abs(sub.eta - super.eta) > 1e-15 * std::max(1.0, sub.eta))
    throw std::invalid_argument(
        "be_banded_hermitian: off-diagonal etas must match");
  for (const Branch* b : {&diag, &sub, &super})
    if (std::abs(b->m) > b->eta * (1.0 + 1e-12))
      throw std::invalid_argument(
          "be_banded_hermitian: |element|/eta > 1, invalid sub-normalization");
  diag.present = diag.eta > 0.0;
  sub.present = sub.eta > 0.0;
  super.present = super.eta > 0.0;
  if (!diag.present && !sub.present)
    throw std::invalid_argument("be_banded_hermitian: all-zero normalization");

  const double alpha = diag.eta + sub.eta + super.eta;
  const std::vector<int> ax = layout.qubits(ax_reg);
  const std::vector<int> sys = layout.qubits(sys_reg);
  const bool has_ae = layout.has(ae_reg);
  const bool sub_trim = sub.present && std::abs(sub.m) < sub.eta;
  const bool diag_trim = diag.present && std::abs(diag.m) < diag.eta;
  if ((sub_trim || diag_trim) && !has_ae)
    throw std::invalid_argument(
        "be_banded_hermitian: eta overrides need the a_e register");

  BlockEncoding be;
  be.circuit = Circuit(layout, "U_banded");
  Circuit& c = be.circuit;

  // prep: |00> -> sqrt(eta_b/alpha) on branch codes
  append_ax_prep(&c, ax, std::sqrt(diag.eta / alpha),
                 std::sqrt(sub.eta / alpha), std::sqrt(super.eta / alpha));

  // select, Hermitian by construction: swap the two shift codes, then apply
  // the shifts and values conditioned on the arrival code.
  if (sub.present) {
    // SWAP(ax0, ax1) exchanges codes 1 and 2.
    c.add(GateKind::kX, 0.0, ax[0], {{ax[1], 1}});
    c.add(GateKind::kX, 0.0, ax[1], {{ax[0], 1}});
    c.add(GateKind::kX, 0.0, ax[0], {{ax[1], 1}});

    Circuit inc(layout), dec(layout);
    append_incrementer(&inc, sys);
    append_decrementer(&dec, sys);
    for (const StmcGate& g : inc.gates()) {
      StmcGate cg = g;
      for (const Control& ctl : code_controls(ax, kCodeSuper))
        cg.controls.push_back(ctl);
      c.add(cg);
    }
    for (const StmcGate& g : dec.gates()) {
      StmcGate cg = g;
      for (const Control& ctl : code_controls(ax, kCodeSub))
        cg.controls.push_back(ctl);
      c.add(cg);
    }
    double arg_inc = std::arg(sub.m / sub.eta);
    if (arg_inc != 0.0) {
      append_subspace_phase(&c, arg_inc, code_controls(ax, kCodeSuper));
      append_subspace_phase(&c, -arg_inc, code_controls(ax, kCodeSub));
    }
    if (sub_trim) {
      // X Ry(2 chi) on a_e, same angle on both shift codes, keeps the select
      // Hermitian; <0|X Ry(2 chi)|0> = sin(chi) = |m|/eta.
      double chi = std::asin(std::abs(sub.m) / sub.eta);
      int ae = layout.offset(ae_reg);
      for (std::uint64_t code : {kCodeSuper, kCodeSub}) {
        c.add(GateKind::kRy, 2.0 * chi, ae, code_controls(ax, code));
        c.add(GateKind::kX, 0.0, ae, code_controls(ax, code));
      }
    }
  }
  if (diag.present) {
    double arg0 = std::arg(diag.m / diag.eta);
    if (std::abs(diag.m) > 0 && arg0 != 0.0)
      append_subspace_phase(&c, arg0, code_controls(ax, kCodeDiag));
    if (diag_trim) {
      double chi = std::asin(std::abs(diag.m) / diag.eta);
      int ae = layout.offset(ae_reg);
      c.add(GateKind::kRy, 2.0 * chi, ae, code_controls(ax, kCodeDiag));
      c.add(GateKind::kX, 0.0, ae, code_controls(ax, kCodeDiag));
    }
  }

  // unprep
  Circuit prep(layout);
  append_ax_prep(&prep, ax, std::sqrt(diag.eta / alpha),
                 std::sqrt(sub.eta / alpha), std::sqrt(super.eta / alpha));
  c.append(prep.adjoint());

  be.alpha = alpha;
  be.ancillas = {ax[0], ax[1]};
  if (has_ae) be.ancillas.push_back(layout.offset(ae_reg));

  auto zeta = [](const Branch& b) -> std::pair<double, double> {
    if (!b.present) return {0.0, 0.0};
    return {2.0 * std::acos(std::min(1.0, std::abs(b.m) / b.eta)),
            -2.0 * std::arg(b.m / b.eta)};
  };
  std::tie(be.zetas.zy_m1, be.zetas.zz_m1) = zeta(sub);
  std::tie(be.zetas.zy_0, be.zetas.zz_0) = zeta(diag);
  std::tie(be.zetas.zy_p1, be.zetas.zz_p1) = zeta(super);
  return be;
}

BlockEncoding assemble_U_C(const BlockEncoding& be_ah,
                           const BlockEncoding& be_al,
                           const BlockEncoding& sine, double k_max,
                           const std::string& lcu_reg) {
  const RegisterLayout& layout = be_ah.circuit.layout();
  if (!(be_al.circuit.layout() == layout) ||
      !(sine.circuit.layout() == layout))
    throw std::invalid_argument("assemble_U_C: layout mismatch");
  if (k_max <= 0.0) throw std::invalid_argument("assemble_U_C: k_max <= 0");

  const double alpha_h = be_ah.alpha;
  const double alpha_b = k_max * be_al.alpha;  // B_m = k_max A_L
  const double alpha_c = alpha_h + alpha_b;
  if (!(alpha_c > 0.0) || !std::isfinite(alpha_c))
    throw std::invalid_argument("assemble_U_C: branch weights do not sum");
  const int lcu = layout.offset(lcu_reg);

  BlockEncoding be;
  be.circuit = Circuit(layout, "U_C");
  Circuit& c = be.circuit;

  double mix = 2.0 * std::atan2(std::sqrt(alpha_b), std::sqrt(alpha_h));
  if (mix != 0.0) c.add(GateKind::kRy, mix, lcu);
  c.append_controlled(be_ah.circuit, {lcu, 0});
  c.append_controlled(sine.circuit, {lcu, 1});
  c.append_controlled(be_al.circuit, {lcu, 1});
  if (mix != 0.0) c.add(GateKind::kRy, -mix, lcu);

  be.alpha = alpha_c;
  be.ancillas = be_ah.ancillas;
  for (int q : be_al.ancillas)
    if (std::find(be.ancillas.begin(), be.ancillas.end(), q) ==
        be.ancillas.end())
      be.ancillas.push_back(q);
  for (int q : sine.ancillas) be.ancillas.push_back(q);
  be.ancillas.push_back(lcu);
  std::sort(be.ancillas.begin(), be.ancillas.end());
  return be;
}

Matrix encoded_block(const BlockEncoding& be, const std::string& sys_reg,
                     const std::map<std::string, std::uint64_t>& fixed) {
  const RegisterLayout& layout = be.circuit.layout();
  const int w = layout.width(sys_reg);
  const int off = layout.offset(sys_reg);
  const std::int64_t dim = std::int64_t{1} << w;

  std::uint64_t base = 0;
  for (const auto& [name, value] : fixed) {
    if (value >= (std::uint64_t{1} << layout.width(name)))
      throw std::invalid_argument("encoded_block: fixed value out of range");
    base |= value << layout.offset(name);
  }

  Matrix block(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    StateVector out = apply_to_basis(
        be.circuit, base | (static_cast<std::uint64_t>(col) << off));
    for (std::int64_t row = 0; row < dim; ++row)
      block(row, col) = out.amps[base | (static_cast<std::uint64_t>(row) << off)];
  }
  return block;
}

}  // namespace lchs
