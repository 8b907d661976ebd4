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

#include "lchs/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lchs {

void AdeParams::validate() const {
  if (n_x < 2) throw std::invalid_argument("AdeParams: n_x must be >= 2");
  if (D < 0.0) throw std::invalid_argument("AdeParams: D must be >= 0");
}

std::pair<Matrix, Matrix> hermitian_split(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_split: matrix must be square");
  Matrix al = (a + a.adjoint()) / 2.0;
  Matrix ah = (a - a.adjoint()) / Complex(0.0, 2.0);
  return {al, ah};
}

namespace {

bool is_normal(const Matrix& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  Matrix comm = m * m.adjoint() - m.adjoint() * m;
  return comm.cwiseAbs().maxCoeff() <= 1e-13 * scale * scale * m.rows();
}

Matrix expm_taylor(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * m) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  return result;
}

}  // namespace

Matrix expm(const Matrix& m, const ExpmOptions& opts) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("expm: matrix must be square");
  if (!m.allFinite()) throw std::invalid_argument("expm: non-finite entries");
  double n1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (n1 > opts.norm_bound)
    throw std::domain_error("expm: matrix norm exceeds configured bound");

  if (is_normal(m)) {
    // Exact path for normal (in particular Hermitian and skew-Hermitian) input.
    Eigen::ComplexEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("expm: eigendecomposition failed");
    const Matrix& vecs = es.eigenvectors();
    Vector ev = es.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) ev(i) = std::exp(ev(i));
    return vecs * ev.asDiagonal() * vecs.adjoint();
  }

  int s = 0;
  if (n1 > 0.25) s = static_cast<int>(std::ceil(std::log2(n1 / 0.25)));
  Matrix base = expm_taylor(m / std::pow(2.0, s));
  for (int i = 0; i < s; ++i) base = base * base;
  return base;
}

double spectral_norm(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("spectral_norm: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  Matrix g = m.adjoint() * m;
  // Fixed, seed-free start vector with nonzero overlap against any basis.
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = Complex(1.0 + 0.5 * std::cos(1.7 * i), 0.25 * std::sin(2.3 * i + 0.4));
  v /= v.norm();

  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Vector w = g * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    double next = std::real(w.dot(g * w));
    if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next)) && it > 2) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(std::max(0.0, lambda));
}

Matrix build_ade_matrix(const AdeParams& p) {
  p.validate();
  const int n = p.grid_points();
  const double dx = p.dx();
  const double c0 = -2.0 * p.D / (dx * dx);
  const double cp = p.D / (dx * dx) - p.v / (2.0 * dx);
  const double cm = p.D / (dx * dx) + p.v / (2.0 * dx);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = -c0;
    a(i, (i + 1) % n) = -cp;
    a(i, (i - 1 + n) % n) = -cm;
  }
  return a;
}

Vector gaussian_initial_state(int n_x, double center, double width) {
  if (width <= 0.0)
    throw std::invalid_argument("gaussian_initial_state: width must be > 0");
  const int n = 1 << n_x;
  const double dx = 1.0 / (n - 1);
  Vector psi(n);
  for (int i = 0; i < n; ++i) {
    double x = i * dx;
    psi(i) = std::exp(-(x - center) * (x - center) / (2.0 * width * width));
  }
  psi /= psi.norm();
  return psi;
}

double norm_l2(const Vector& v) { return v.norm(); }

double norm_linf(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

double err_l2(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("err_l2: dimension mismatch");
  return (a - b).norm();
}

double err_linf(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("err_linf: dimension mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace lchs
