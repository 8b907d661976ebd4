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

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace lchs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Parameters of the advection-diffusion test problem on the periodic unit
/// interval. N_x = 2^{n_x} grid points, dx = 1/(N_x - 1).
struct AdeParams {
  int n_x = 2;      // qubits of the spatial register
  double v = 1.0;   // advection velocity
  double D = 0.01;  // diffusivity

  void validate() const;
  int grid_points() const { return 1 << n_x; }
  double dx() const { return 1.0 / (grid_points() - 1); }
};

/// Splits A into Hermitian parts: A = A_L + i*A_H with
/// A_L = (A + A^t)/2 and A_H = (A - A^t)/(2i).
std::pair<Matrix, Matrix> hermitian_split(const Matrix& a);

struct ExpmOptions {
  double norm_bound = 1e4;  // reject inputs with larger 1-norm
};

/// Matrix exponential e^M. Normal matrices go through an eigendecomposition,
/// everything else through scaling-and-squaring on a short Taylor series.
Matrix expm(const Matrix& m, const ExpmOptions& opts = {});

/// Largest singular value via power iteration on M^dag M with a fixed start
/// vector, converged to 1e-12 relative.
double spectral_norm(const Matrix& m);

/// Generator of the discretized advection-diffusion equation,
/// d_t psi = -A psi, periodic tridiagonal stencil.
Matrix build_ade_matrix(const AdeParams& p);

/// Unit-norm Gaussian profile on the spatial grid, amplitude_i proportional
/// to exp(-(x_i - center)^2 / (2 width^2)).
Vector gaussian_initial_state(int n_x, double center, double width);

double norm_l2(const Vector& v);
double norm_linf(const Vector& v);
double err_l2(const Vector& a, const Vector& b);
double err_linf(const Vector& a, const Vector& b);

bool approx_equal(const Matrix& a, const Matrix& b, double tol);

}  // namespace lchs
