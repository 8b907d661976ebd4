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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lchs/linalg.hpp"
#include "lchs/sim_engine.hpp"

namespace lchs {

/// Uniform banded matrix, one complex value per diagonal offset in {-1,0,+1},
/// periodic wrap. This is the sparsity class of the advection-diffusion
/// generator and its Hermitian parts.
struct BandedSpec {
  std::map<int, Complex> diagonals;
  bool periodic = true;

  void validate_hermitian() const;
  Matrix to_matrix(int n_x) const;
};

/// Per-diagonal normalizers eta used by the value rotations. Defaults to the
/// modulus of each diagonal entry (the tightest valid choice).
struct EtaOverrides {
  std::optional<double> eta_m1, eta_0, eta_p1;
};

/// Rotation-angle table of the banded oracles:
/// zeta_y = 2 arccos(|m|/eta), zeta_z = -2 arg(m/eta).
struct ZetaAngles {
  double zy_m1 = 0.0, zz_m1 = 0.0;
  double zy_0 = 0.0, zz_0 = 0.0;
  double zy_p1 = 0.0, zz_p1 = 0.0;
};

/// A unitary whose ancilla-zero block realizes EncodedMatrix/alpha.
struct BlockEncoding {
  Circuit circuit;
  double alpha = 1.0;
  std::vector<int> ancillas;  // projected to |0...0| for the block
  ZetaAngles zetas;
};

/// Oracle over (r_k, a_sin) whose a_sin-zero block is sin(theta_j) for every
/// index j, built from one Ry ladder: Ry(2 a0) then controlled Ry(2 a1/2^l)
/// per r_k qubit, a0 = -pi/2, a1 = (pi/2) N_k/(N_k-1), and a closing X.
BlockEncoding sine_circuit(const RegisterLayout& layout,
                           const std::string& rk_reg = "r_k",
                           const std::string& sin_reg = "a_sin");

/// Block-encoding of a periodic banded Hermitian matrix on `sys_reg`.
/// Shifts are incrementer/decrementer cascades; values enter through
/// branch-conditioned rotations on a_e and transition phases on a_x.
/// The emitted unitary is Hermitian, which the QSP iterate relies on.
BlockEncoding be_banded_hermitian(const RegisterLayout& layout,
                                  const BandedSpec& spec,
                                  const EtaOverrides& etas = {},
                                  const std::string& sys_reg = "r_in",
                                  const std::string& ax_reg = "a_x",
                                  const std::string& ae_reg = "a_e");

/// LCU of U_{A_H} and U_{B_m} (with B_m = k_max A_L and the sine oracle on
/// r_k): the block at index j is C_j/alpha_C, C_j = A_H + sin(theta_j) B_m,
/// alpha_C = alpha_H + k_max alpha_L.
BlockEncoding assemble_U_C(const BlockEncoding& be_ah,
                           const BlockEncoding& be_al,
                           const BlockEncoding& sine, double k_max,
                           const std::string& lcu_reg = "a_lcu");

/// Incrementer |i> -> |i+1 mod 2^w| on a register, multi-controlled X cascade.
void append_incrementer(Circuit* c, const std::vector<int>& reg_qubits);
void append_decrementer(Circuit* c, const std::vector<int>& reg_qubits);

/// Appends R = 2|0..0><0..0| - I on the given qubits (identity elsewhere).
void append_reflection_about_zero(Circuit* c, const std::vector<int>& qubits);
/// Same with a global minus sign (three gates instead of four).
void append_neg_reflection_about_zero(Circuit* c,
                                      const std::vector<int>& qubits);

/// Verification back-door: the encoded block on `sys_reg` with the listed
/// ancillas projected to zero and other registers held at fixed basis values.
Matrix encoded_block(const BlockEncoding& be, const std::string& sys_reg,
                     const std::map<std::string, std::uint64_t>& fixed = {});

}  // namespace lchs
