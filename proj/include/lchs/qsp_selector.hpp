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

#include <optional>
#include <string>
#include <vector>

#include "lchs/block_encoding.hpp"
#include "lchs/sim_engine.hpp"

namespace lchs {

/// Real polynomial of definite parity in the Chebyshev basis.
/// coefs[i] multiplies T_{2i}(x) (parity 0) or T_{2i+1}(x) (parity 1).
struct ChebyshevExpansion {
  int parity = 0;
  std::vector<double> coefs;
  double truncation_error = 0.0;

  int degree() const {
    return coefs.empty() ? -1 : 2 * (static_cast<int>(coefs.size()) - 1) + parity;
  }
  double eval(double x) const;
  ChebyshevExpansion scaled(double s) const;
};

/// J_0..J_nmax at argument x by Miller's downward recurrence.
std::vector<double> bessel_j_array(int nmax, double x);

/// Jacobi-Anger expansions of cos(tau x) (even) and sin(tau x) (odd),
/// truncated so each uniform error is <= eps. The sine expansion is empty
/// at tau = 0.
std::pair<ChebyshevExpansion, ChebyshevExpansion> jacobi_anger(double tau,
                                                               double eps);

/// QSP phases for one polynomial target.
///
/// `phases` is in the circuit (reflection) convention: with the Hermitian
/// block-encoding U and the projector-phase gadget G(phi) = e^{i phi (2P-I)},
/// the word G(phi_0) U G(phi_1) U ... U G(phi_d) carries Re-block equal to
/// the target. `wx_phases` is the symmetric solution in the Wx convention
/// the solver works in.
struct QspPhaseSequence {
  enum class Target { kCos, kSin, kGeneric };
  Target target = Target::kGeneric;
  double tau = 0.0;
  int parity = 0;
  double scale = 1.0;      // target rescale tracked for post-processing
  double residual = 0.0;   // realized-vs-target max error on a dense grid
  std::vector<double> phases;
  std::vector<double> wx_phases;

  int degree() const { return static_cast<int>(phases.size()) - 1; }
};

/// Scalar QSP model of the circuit word at signal value x in [-1,1];
/// the realized block entry is its real part.
Complex qsp_model_value(const std::vector<double>& circuit_phases, double x);

/// Finds phases realizing the expansion's values (as the Re-block) to eps.
/// Deterministic; throws with the residual on non-convergence.
QspPhaseSequence solve_phases(const ChebyshevExpansion& target, double eps);

std::string serialize_phases(const QspPhaseSequence& seq);
QspPhaseSequence deserialize_phases(const std::string& text);

/// Disk cache of solved sequences, keyed by (target, tau, eps, scale).
class PhaseCache {
 public:
  explicit PhaseCache(std::string dir) : dir_(std::move(dir)) {}
  std::optional<QspPhaseSequence> load(QspPhaseSequence::Target target,
                                       double tau, double eps,
                                       double scale) const;
  void store(const QspPhaseSequence& seq, double eps) const;

 private:
  std::string key_path(QspPhaseSequence::Target target, double tau, double eps,
                       double scale) const;
  std::string dir_;
};

/// Qubitization iterate Q = (reflection about |0> of the encoding ancillas,
/// identity on r_k and the system) composed after U_C. With the Hermitian
/// U_C emitted by this project, Q rotates every eigenvalue pair by
/// +-arccos(lambda) inside its own two-dimensional subspace, for all r_k
/// sectors at once.
Circuit iterate_Q(const BlockEncoding& uc);

struct SelectorOptions {
  double delta = 1e-3;             // target headroom below 1
  std::string qsp_reg = "a_qsp";   // two qubits: branch select + Re extraction
  const PhaseCache* cache = nullptr;
};

struct Selector {
  Circuit circuit;
  double tau = 0.0;
  double scale = 1.0;    // block = scale * exp(-i C_j t) + O(eps)
  int n_uc_calls = 0;
  QspPhaseSequence seq_cos, seq_sin;
  std::vector<int> ancillas;  // qsp + block-encoding ancillas
};

/// Builds the selector S: acting on |j>_{r_k}|0>_{anc}|psi>, the ancilla-zero
/// block is scale * exp(-i C_j t) |psi> to eps_qsp, for all j in parallel.
/// One QSP word per cos/sin branch combined on the first a_qsp qubit, the
/// +-phase Re-extraction on the second, and one fixed completion round that
/// restores the success amplitude to 1 - O(delta^2).
Selector build_selector(const BlockEncoding& uc, double t, double eps_qsp,
                        const SelectorOptions& opts = {});

}  // namespace lchs
