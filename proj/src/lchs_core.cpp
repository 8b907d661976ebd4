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

#include "lchs/lchs_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lchs {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string kernel_name(Kernel k) {
  return k == Kernel::kSpecial ? "special" : "improved";
}

Kernel kernel_from_name(const std::string& name) {
  if (name == "special") return Kernel::kSpecial;
  if (name == "improved") return Kernel::kImproved;
  throw std::invalid_argument("unknown kernel: " + name);
}

void LchsConfig::validate() const {
  if (kernel == Kernel::kImproved && (beta <= 0.0 || beta >= 1.0))
    throw std::invalid_argument("LchsConfig: beta must be in (0,1)");
  if (k_max <= 0.0) throw std::invalid_argument("LchsConfig: k_max must be > 0");
  if (n_k < 1) throw std::invalid_argument("LchsConfig: n_k must be >= 1");
  if (t < 0.0) throw std::invalid_argument("LchsConfig: t must be >= 0");
  if (eps_qsp <= 0.0 || eps_qsp >= 1.0)
    throw std::invalid_argument("LchsConfig: eps_qsp must be in (0,1)");
  if (!aa.automatic && aa.fixed_rounds < 0)
    throw std::invalid_argument("LchsConfig: aa rounds must be >= 0");
}

Complex kernel_special(double k) {
  return 1.0 / (kPi * Complex(1.0, k));
}

Complex kernel_improved(double k, double beta) {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("kernel_improved: beta must be in (0,1)");
  // 1 / (2 pi e^{-2^beta} exp((1+ik)^beta)); 1+ik never meets the branch cut.
  Complex arg = std::pow(Complex(1.0, k), beta);
  return std::exp(std::pow(2.0, beta)) / (2.0 * kPi * std::exp(arg));
}

void theta_grid(int n_k, double k_max, std::vector<double>* thetas,
                std::vector<double>* ks) {
  if (n_k < 1) throw std::invalid_argument("theta_grid: n_k must be >= 1");
  const std::int64_t nk = std::int64_t{1} << n_k;
  const double dtheta = kPi / static_cast<double>(nk - 1);
  thetas->resize(nk);
  ks->resize(nk);
  for (std::int64_t j = 0; j < nk; ++j) {
    double th = (j == nk - 1) ? kPi / 2.0 : -kPi / 2.0 + j * dtheta;
    (*thetas)[j] = th;
    (*ks)[j] = k_max * std::sin(th);
  }
}

namespace {

Complex weight_at(Kernel kernel, double beta, double k_max, double theta,
                  double dtheta, double k) {
  Complex xi = (kernel == Kernel::kSpecial) ? kernel_special(k)
                                            : kernel_improved(k, beta);
  return k_max * std::cos(theta) * dtheta * xi / Complex(1.0, -k);
}

}  // namespace

WeightSet compute_weights(const LchsConfig& cfg) {
  cfg.validate();
  WeightSet w;
  theta_grid(cfg.n_k, cfg.k_max, &w.thetas, &w.ks);
  const double dtheta = kPi / static_cast<double>(cfg.terms() - 1);
  w.weights.resize(w.thetas.size());
  for (std::size_t j = 0; j < w.thetas.size(); ++j) {
    w.weights[j] = weight_at(cfg.kernel, cfg.beta, cfg.k_max, w.thetas[j],
                             dtheta, w.ks[j]);
    if (cfg.kernel == Kernel::kSpecial) w.weights[j].imag(0.0);
  }
  return w;
}

Complex weight_sum(Kernel kernel, double beta, double k_max, int n_k) {
  const std::int64_t nk = std::int64_t{1} << n_k;
  const double dtheta = kPi / static_cast<double>(nk - 1);
  Complex sum = 0.0;
  for (std::int64_t j = 0; j < nk; ++j) {
    double th = (j == nk - 1) ? kPi / 2.0 : -kPi / 2.0 + j * dtheta;
    double k = k_max * std::sin(th);
    sum += weight_at(kernel, beta, k_max, th, dtheta, k);
  }
  return sum;
}

Vector classical_lchs_apply(const Matrix& a, const Vector& psi0,
                            const LchsConfig& cfg) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("classical_lchs_apply: matrix must be square");
  if (a.rows() != psi0.size())
    throw std::invalid_argument("classical_lchs_apply: dimension mismatch");
  cfg.validate();

  auto [al, ah] = hermitian_split(a);
  WeightSet w = compute_weights(cfg);
  const int nk = static_cast<int>(w.weights.size());
  const int dim = static_cast<int>(a.rows());

  std::vector<Vector> terms(nk);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < nk; ++j) {
    Matrix c = ah + (std::sin(w.thetas[j]) * cfg.k_max) * al;
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    Vector phase(dim);
    for (int i = 0; i < dim; ++i)
      phase(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * cfg.t));
    terms[j] = w.weights[j] *
               (es.eigenvectors() *
                (phase.asDiagonal() * (es.eigenvectors().adjoint() * psi0)));
  }
  // Deterministic ordered reduction.
  Vector out = Vector::Zero(dim);
  for (int j = 0; j < nk; ++j) out += terms[j];
  return out;
}

double nk_bound(double eps_lchs, double k_max, double norm_al, double t,
                double c) {
  if (eps_lchs <= 0.0)
    throw std::invalid_argument("nk_bound: eps_lchs must be > 0");
  return c * std::pow(eps_lchs, -0.5) * std::pow(k_max, 1.5) * norm_al * t;
}

int suggest_nk(const LchsConfig& cfg, double norm_al, double eps_lchs,
               double c) {
  double bound = nk_bound(eps_lchs, cfg.k_max, norm_al, cfg.t, c);
  int n_k = 1;
  while ((1LL << n_k) < bound && n_k < 62) ++n_k;
  return n_k;
}

}  // namespace lchs
