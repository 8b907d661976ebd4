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

#include "lchs/qsp_selector.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace lchs {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ChebyshevExpansion::eval(double x) const {
  double th = std::acos(std::clamp(x, -1.0, 1.0));
  double v = 0.0;
  for (std::size_t i = 0; i < coefs.size(); ++i)
    v += coefs[i] * std::cos((2.0 * i + parity) * th);
  return v;
}

ChebyshevExpansion ChebyshevExpansion::scaled(double s) const {
  ChebyshevExpansion out = *this;
  for (double& c : out.coefs) c *= s;
  out.truncation_error *= std::abs(s);
  return out;
}

std::vector<double> bessel_j_array(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("bessel_j_array: nmax < 0");
  std::vector<double> j(nmax + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const int start = nmax + static_cast<int>(std::ceil(std::abs(x))) / 2 + 48;
  std::vector<double> tmp(start + 2, 0.0);
  tmp[start + 1] = 0.0;
  tmp[start] = 1e-280;
  for (int m = start; m >= 1; --m) {
    tmp[m - 1] = (2.0 * m / x) * tmp[m] - tmp[m + 1];
    if (std::abs(tmp[m - 1]) > 1e260) {
      for (int i = m - 1; i <= start + 1; ++i) tmp[i] *= 1e-260;
    }
  }
  // Normalization: J_0 + 2 sum_{m even} J_m = 1.
  double norm = tmp[0];
  for (int m = 2; m <= start; m += 2) norm += 2.0 * tmp[m];
  for (int m = 0; m <= nmax; ++m) j[m] = tmp[m] / norm;
  return j;
}

std::pair<ChebyshevExpansion, ChebyshevExpansion> jacobi_anger(double tau,
                                                               double eps) {
  if (tau < 0.0) throw std::invalid_argument("jacobi_anger: tau must be >= 0");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("jacobi_anger: eps must be in (0,1)");
  ChebyshevExpansion even{0, {}, 0.0}, odd{1, {}, 0.0};
  if (tau == 0.0) {
    even.coefs = {1.0};
    return {even, odd};
  }

  const int order_cap = 4096;
  int big = static_cast<int>(tau) + 80 +
            static_cast<int>(4.0 * std::log(1.0 / eps));
  if (big > order_cap)
    throw std::invalid_argument("jacobi_anger: eps unachievable at order cap");
  std::vector<double> j = bessel_j_array(big, tau);

  // cos(tau x) = J_0 + 2 sum (-1)^m J_{2m} T_{2m}
  // sin(tau x) = 2 sum (-1)^m J_{2m+1} T_{2m+1}
  std::vector<double> ce{j[0]}, co;
  for (int m = 1; 2 * m <= big; ++m) ce.push_back(2.0 * ((m % 2) ? -1.0 : 1.0) * j[2 * m]);
  for (int m = 0; 2 * m + 1 <= big; ++m)
    co.push_back(2.0 * ((m % 2) ? -1.0 : 1.0) * j[2 * m + 1]);

  auto truncate = [&](std::vector<double>& c, double* err) {
    double tail = 0.0;
    std::size_t cut = c.size();
    while (cut > 1 && tail + std::abs(c[cut - 1]) <= eps / 2.0) {
      tail += std::abs(c[cut - 1]);
      --cut;
    }
    c.resize(cut);
    *err = tail;
  };
  truncate(ce, &even.truncation_error);
  truncate(co, &odd.truncation_error);
  even.coefs = std::move(ce);
  odd.coefs = std::move(co);
  return {even, odd};
}

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 wx_gate(double x) {
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  return {Complex(x, 0), Complex(0, s), Complex(0, s), Complex(x, 0)};
}

inline Mat2 zphase(double p) {
  return {std::exp(Complex(0, p)), 0.0, 0.0, std::exp(Complex(0, -p))};
}

// Realized value and gradient of Re[U_psi(x)]_{00} in the Wx convention.
void wx_value_grad(double x, const std::vector<double>& psi, double* value,
                   double* grad) {
  const int d = static_cast<int>(psi.size()) - 1;
  const Mat2 w = wx_gate(x);
  std::vector<Mat2> pre(d + 1), suf(d + 1);
  pre[0] = zphase(psi[0]);
  for (int m = 1; m <= d; ++m) pre[m] = mul(mul(pre[m - 1], w), zphase(psi[m]));
  suf[d] = {1.0, 0.0, 0.0, 1.0};
  for (int m = d - 1; m >= 0; --m) suf[m] = mul(mul(w, zphase(psi[m + 1])), suf[m + 1]);
  *value = pre[d][0].real();
  if (!grad) return;
  for (int m = 0; m <= d; ++m) {
    // insert iZ after the m-th phase
    Complex g = Complex(0, 1) * (pre[m][0] * suf[m][0]) +
                Complex(0, -1) * (pre[m][1] * suf[m][2]);
    grad[m] = g.real();
  }
}

double wx_value(double x, const std::vector<double>& psi) {
  double v;
  wx_value_grad(x, psi, &v, nullptr);
  return v;
}

std::vector<double> mirror(const std::vector<double>& z, int d) {
  std::vector<double> psi(d + 1);
  const int nf = static_cast<int>(z.size());
  for (int m = 0; m <= d; ++m) psi[m] = (m < nf) ? z[m] : z[d - m];
  return psi;
}

// Symmetric-phase Newton solve of Re[U_psi]_{00} = f on Chebyshev nodes.
struct WxSolution {
  std::vector<double> psi;
  double node_residual = 0.0;
};

WxSolution wx_newton(const ChebyshevExpansion& target, int d,
                     const std::vector<double>* warm = nullptr) {
  const int nf = (d % 2 == 0) ? d / 2 + 1 : (d + 1) / 2;
  std::vector<double> nodes(nf), fvals(nf);
  for (int k = 0; k < nf; ++k) {
    nodes[k] = std::cos(kPi * (2.0 * k + 1.0) / (4.0 * nf));
    fvals[k] = target.eval(nodes[k]);
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(nf);
  z(0) = kPi / 4.0;
  if (warm && static_cast<int>(warm->size()) == d + 1)
    for (int m = 0; m < nf; ++m) z(m) = (*warm)[m];
  double lambda = 0.0;

  auto residual = [&](const Eigen::VectorXd& zz, Eigen::VectorXd* r,
                      Eigen::MatrixXd* jac) {
    std::vector<double> zv(zz.data(), zz.data() + nf);
    std::vector<double> psi = mirror(zv, d);
    std::vector<double> grad(d + 1);
    double rmax = 0.0;
    for (int i = 0; i < nf; ++i) {
      double v;
      wx_value_grad(nodes[i], psi, &v, jac ? grad.data() : nullptr);
      if (r) (*r)(i) = v - fvals[i];
      rmax = std::max(rmax, std::abs(v - fvals[i]));
      if (jac) {
        for (int m = 0; m < nf; ++m) {
          int pair = d - m;
          (*jac)(i, m) = grad[m] + ((pair != m && pair >= nf) ? grad[pair] : 0.0);
        }
      }
    }
    return rmax;
  };

  Eigen::VectorXd r(nf);
  Eigen::MatrixXd jac(nf, nf);
  double res = residual(z, &r, &jac);
  for (int it = 0; it < 120; ++it) {
    if (res < 5e-14) break;
    Eigen::MatrixXd a = jac.transpose() * jac;
    for (int i = 0; i < nf; ++i) a(i, i) += lambda;
    Eigen::VectorXd step = a.ldlt().solve(jac.transpose() * r);
    bool improved = false;
    for (double sc : {1.0, 0.5, 0.25, 0.1, 0.03}) {
      Eigen::VectorXd zn = z - sc * step;
      double rn = residual(zn, nullptr, nullptr);
      if (rn < res) {
        z = zn;
        res = residual(z, &r, &jac);
        lambda *= 0.3;
        improved = true;
        break;
      }
    }
    if (!improved) {
      lambda = (lambda == 0.0) ? 1e-9 : lambda * 10.0;
      if (lambda > 1e10) break;
    }
  }

  WxSolution sol;
  std::vector<double> zv(z.data(), z.data() + nf);
  sol.psi = mirror(zv, d);
  sol.node_residual = res;
  return sol;
}

std::vector<double> translate_to_circuit(const std::vector<double>& psi) {
  const int d = static_cast<int>(psi.size()) - 1;
  std::vector<double> phi(d + 1);
  if (d == 0) {
    phi[0] = -psi[0];
    return phi;
  }
  phi[0] = kPi / 4.0 - psi[0] - d * kPi / 2.0;
  for (int m = 1; m < d; ++m) phi[m] = kPi / 2.0 - psi[m];
  phi[d] = kPi / 4.0 - psi[d];
  for (double& p : phi) p = std::remainder(p, 2.0 * kPi);
  return phi;
}

}  // namespace

Complex qsp_model_value(const std::vector<double>& circuit_phases, double x) {
  const int d = static_cast<int>(circuit_phases.size()) - 1;
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Mat2 refl = {Complex(x, 0), Complex(s, 0), Complex(s, 0), Complex(-x, 0)};
  Mat2 m = zphase(circuit_phases[0]);
  for (int k = 1; k <= d; ++k) m = mul(mul(m, refl), zphase(circuit_phases[k]));
  return m[0];
}

QspPhaseSequence solve_phases(const ChebyshevExpansion& target, double eps) {
  if (target.coefs.empty())
    throw std::invalid_argument("solve_phases: empty expansion");
  if (eps <= 0.0) throw std::invalid_argument("solve_phases: eps must be > 0");
  const int d = target.degree();
  if (d > 700)
    throw std::invalid_argument("solve_phases: degree beyond solver cap");

  // Track an extra 1/2 rescale only if the target leaves the valid range.
  double fmax = 0.0;
  for (int i = 0; i <= 2000; ++i)
    fmax = std::max(fmax, std::abs(target.eval(-1.0 + i * 1e-3)));
  double scale = 1.0;
  ChebyshevExpansion t = target;
  if (fmax > 1.0 + 1e-12) {
    scale = 0.5;
    t = target.scaled(0.5);
  }

  WxSolution sol = wx_newton(t, d);
  if (sol.node_residual > std::max(1e-11, eps)) {
    // Amplitude continuation fallback, warm-started.
    for (double sigma : {0.5, 0.8, 0.95, 1.0}) {
      WxSolution stage = wx_newton(t.scaled(sigma), d);
      if (sigma == 1.0) sol = stage;
    }
    if (sol.node_residual > std::max(1e-11, eps)) {
      std::ostringstream msg;
      msg << "solve_phases: no convergence, residual " << sol.node_residual;
      throw std::runtime_error(msg.str());
    }
  }

  QspPhaseSequence seq;
  seq.parity = t.parity;
  seq.scale = scale;
  seq.wx_phases = sol.psi;
  seq.phases = translate_to_circuit(sol.psi);

  double resid = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double x = -1.0 + 2.0 * i / 1000.0;
    resid = std::max(resid,
                     std::abs(qsp_model_value(seq.phases, x).real() - t.eval(x)));
  }
  seq.residual = resid;
  if (resid > std::max(1e-10, eps)) {
    std::ostringstream msg;
    msg << "solve_phases: realized polynomial residual " << resid
        << " exceeds eps " << eps;
    throw std::runtime_error(msg.str());
  }
  return seq;
}

std::string serialize_phases(const QspPhaseSequence& seq) {
  std::ostringstream os;
  os.precision(17);
  os << "# lchsemu qsp phases v1\n";
  os << "# target=" << static_cast<int>(seq.target) << " tau=" << seq.tau
     << " parity=" << seq.parity << " scale=" << seq.scale
     << " residual=" << seq.residual << "\n";
  for (double p : seq.phases) os << p << "\n";
  return os.str();
}

QspPhaseSequence deserialize_phases(const std::string& text) {
  QspPhaseSequence seq;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t pos;
      auto grab = [&](const std::string& key) -> std::optional<double> {
        pos = line.find(key + "=");
        if (pos == std::string::npos) return std::nullopt;
        return std::stod(line.substr(pos + key.size() + 1));
      };
      if (auto v = grab("target"))
        seq.target = static_cast<QspPhaseSequence::Target>(static_cast<int>(*v));
      if (auto v = grab("tau")) seq.tau = *v;
      if (auto v = grab("parity")) seq.parity = static_cast<int>(*v);
      if (auto v = grab("scale")) seq.scale = *v;
      if (auto v = grab("residual")) {
        seq.residual = *v;
        header_seen = true;
      }
      continue;
    }
    seq.phases.push_back(std::stod(line));
  }
  if (!header_seen || seq.phases.empty())
    throw std::runtime_error("deserialize_phases: malformed phase file");
  return seq;
}

std::string PhaseCache::key_path(QspPhaseSequence::Target target, double tau,
                                 double eps, double scale) const {
  std::ostringstream key;
  key.precision(17);
  key << static_cast<int>(target) << "|" << tau << "|" << eps << "|" << scale;
  std::size_t h = std::hash<std::string>{}(key.str());
  std::ostringstream name;
  name << dir_ << "/qsp_" << std::hex << h << ".txt";
  return name.str();
}

std::optional<QspPhaseSequence> PhaseCache::load(
    QspPhaseSequence::Target target, double tau, double eps,
    double scale) const {
  std::ifstream in(key_path(target, tau, eps, scale));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize_phases(buf.str());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void PhaseCache::store(const QspPhaseSequence& seq, double eps) const {
  std::filesystem::create_directories(dir_);
  std::ofstream out(key_path(seq.target, seq.tau, eps, seq.scale));
  out << serialize_phases(seq);
}

Circuit iterate_Q(const BlockEncoding& uc) {
  Circuit q(uc.circuit.layout(), "Q");
  q.append(uc.circuit);
  append_reflection_about_zero(&q, uc.ancillas);
  return q;
}

namespace {

// Projector-phase gadget, conditioned on the Re-extraction qubit rp:
// e^{+i phi (2P-I)} on rp=0 and e^{-i phi (2P-I)} on rp=1, P = |0..0><0..0|
// of the encoding ancillas.
void append_phase_gadget(Circuit* c, double phi, int rp,
                         const std::vector<Control>& branch,
                         const std::vector<int>& abe) {
  if (phi == 0.0) return;
  std::vector<Control> ctl_all = branch;
  c->add(GateKind::kRz, 2.0 * phi, rp, ctl_all);
  for (int q : abe) ctl_all.push_back({q, 0});
  c->add(GateKind::kRz, -4.0 * phi, rp, ctl_all);
}

void append_qsp_word(Circuit* c, const BlockEncoding& uc,
                     const QspPhaseSequence& seq, int rp,
                     const Control& branch_ctl) {
  const int d = seq.degree();
  const std::vector<Control> branch = {branch_ctl};
  append_phase_gadget(c, seq.phases[d], rp, branch, uc.ancillas);
  for (int m = d - 1; m >= 0; --m) {
    c->append_controlled(uc.circuit, branch_ctl);
    append_phase_gadget(c, seq.phases[m], rp, branch, uc.ancillas);
  }
}

}  // namespace

Selector build_selector(const BlockEncoding& uc, double t, double eps_qsp,
                        const SelectorOptions& opts) {
  if (t < 0.0) throw std::invalid_argument("build_selector: t must be >= 0");
  const RegisterLayout& layout = uc.circuit.layout();
  if (layout.width(opts.qsp_reg) != 2)
    throw std::invalid_argument("build_selector: a_qsp must be two qubits");
  const int cb = layout.qubits(opts.qsp_reg)[0];  // cos/sin branch select
  const int rp = layout.qubits(opts.qsp_reg)[1];  // Re-extraction

  Selector sel;
  sel.tau = uc.alpha * t;

  auto [exp_cos, exp_sin] = jacobi_anger(sel.tau, eps_qsp / 8.0);
  if (exp_sin.coefs.empty()) exp_sin.coefs = {0.0};  // tau = 0
  const double headroom = 1.0 - opts.delta;

  auto solve_branch = [&](const ChebyshevExpansion& e,
                          QspPhaseSequence::Target target) {
    if (opts.cache) {
      if (auto hit = opts.cache->load(target, sel.tau, eps_qsp, headroom))
        return *hit;
    }
    QspPhaseSequence seq = solve_phases(e.scaled(headroom), eps_qsp / 8.0);
    seq.target = target;
    seq.tau = sel.tau;
    seq.scale = headroom;
    if (opts.cache) opts.cache->store(seq, eps_qsp);
    return seq;
  };
  sel.seq_cos = solve_branch(exp_cos, QspPhaseSequence::Target::kCos);
  sel.seq_sin = solve_branch(exp_sin, QspPhaseSequence::Target::kSin);

  // W: equal-weight LCU of the cos word and -i times the sin word; block
  // a * V with a = (1-delta)/2 and V ~ exp(-i tau x).
  Circuit w(layout, "selector_W");
  w.add(GateKind::kH, 0.0, cb);
  w.add(GateKind::kH, 0.0, rp);
  append_qsp_word(&w, uc, sel.seq_cos, rp, {cb, 0});
  append_qsp_word(&w, uc, sel.seq_sin, rp, {cb, 1});
  w.add(GateKind::kPhase, -kPi / 2.0, cb);
  w.add(GateKind::kH, 0.0, rp);
  w.add(GateKind::kH, 0.0, cb);

  std::vector<int> refl_qubits = {cb, rp};
  for (int q : uc.ancillas) refl_qubits.push_back(q);

  // One oblivious completion round: -(W R W^dag R W) has block 3T - 4TT^dagT.
  Circuit s(layout, "selector");
  s.append(w);
  append_neg_reflection_about_zero(&s, refl_qubits);
  s.append(w.adjoint());
  append_neg_reflection_about_zero(&s, refl_qubits);
  s.append(w);
  s.add(GateKind::kRz, 2.0 * kPi, cb);  // global -1

  const double a = headroom / 2.0;
  sel.scale = 3.0 * a - 4.0 * a * a * a;
  sel.n_uc_calls = 3 * (sel.seq_cos.degree() + sel.seq_sin.degree());
  sel.circuit = std::move(s);
  sel.ancillas = refl_qubits;
  return sel;
}

}  // namespace lchs
