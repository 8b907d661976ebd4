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
#include <string>
#include <vector>

#include "lchs/linalg.hpp"

namespace lchs {

enum class Kernel { kSpecial, kImproved };

std::string kernel_name(Kernel k);
Kernel kernel_from_name(const std::string& name);

/// Amplitude-amplification mode for the weight-preparation oracle.
struct AaMode {
  bool automatic = true;  // rounds chosen from the raw success probability
  int fixed_rounds = 0;   // used when automatic == false

  static AaMode Auto() { return {true, 0}; }
  static AaMode Fixed(int n) { return {false, n}; }
};

/// Method parameters of one LCHS computation.
struct LchsConfig {
  Kernel kernel = Kernel::kImproved;
  double beta = 0.7;       // kernel exponent, in (0,1) for the improved kernel
  double k_max = 10.0;     // Fourier-space truncation
  int n_k = 4;             // qubits of the index register, N_k = 2^{n_k}
  double t = 0.0;          // simulated time
  double eps_qsp = 1e-8;   // per-call QSP target error
  AaMode aa = AaMode::Auto();

  int terms() const { return 1 << n_k; }
  void validate() const;
};

/// Discretized theta grid and weights of the LCHS sum.
struct WeightSet {
  std::vector<Complex> weights;  // w_j
  std::vector<double> thetas;    // theta_j
  std::vector<double> ks;        // k_j = k_max sin(theta_j)
};

/// Special (Cauchy-type) kernel 1/(pi (1 + ik)).
Complex kernel_special(double k);

/// Improved kernel 1/(2 pi e^{-2^beta} exp((1+ik)^beta)), principal branch.
Complex kernel_improved(double k, double beta);

/// theta_j = -pi/2 + j pi/(N_k - 1) and k_j = k_max sin(theta_j).
void theta_grid(int n_k, double k_max, std::vector<double>* thetas,
                std::vector<double>* ks);

/// Weights w_j = k_max cos(theta_j) dtheta xi(k_j) / (1 - i k_j).
WeightSet compute_weights(const LchsConfig& cfg);

/// Sum of the weights without materializing the set; usable for very large n_k.
Complex weight_sum(Kernel kernel, double beta, double k_max, int n_k);

/// Brute-force oracle: sum_j w_j exp(-i C_j t) psi0 with
/// C_j = A_H + sin(theta_j) k_max A_L. Dense exponentials, exact arithmetic
/// reference for every circuit test.
Vector classical_lchs_apply(const Matrix& a, const Vector& psi0,
                            const LchsConfig& cfg);

/// Grid-size bound N_k >= c eps^{-1/2} k_max^{3/2} ||A_L|| t.
double nk_bound(double eps_lchs, double k_max, double norm_al, double t,
                double c = 1.0);

/// Smallest n_k whose 2^{n_k} meets nk_bound.
int suggest_nk(const LchsConfig& cfg, double norm_al, double eps_lchs,
               double c = 1.0);

}  // namespace lchs
