// Copyright 2026 The CAMPS Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "camps/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "camps/errors.hpp"
#include "camps/magic.hpp"

namespace camps {

StateVector PauliSumHamiltonian::apply(const StateVector& v) const {
  StateVector out = StateVector::Zero(v.size());
  for (const PauliTerm& t : terms) out += t.coeff * apply_pauli(t.pauli, v);
  return out;
}

Eigen::MatrixXcd PauliSumHamiltonian::to_dense() const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (n > kMaxDenseMatrixQubits) throw SizeLimitError("PauliSumHamiltonian::to_dense refused for " + std::to_string(n) + " qubits");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const PauliTerm& t : terms) out += t.coeff * camps::to_dense(t.pauli);
  return out;
}

double PauliSumHamiltonian::norm_bound() const {
  double s = 0.0;
  for (const PauliTerm& t : terms) s += std::abs(t.coeff);
  return s;
}

void QuenchConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("QuenchConfig: " + what); };
  if (n < 2) fail("n must be at least 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
  if (!(t_max >= dt) || !std::isfinite(t_max)) fail("t_max must be at least dt");
  if (chi_max < 1) fail("chi_max must be positive");
  if (!std::isfinite(J) || !std::isfinite(h_x) || !std::isfinite(h_z)) fail("couplings must be finite");
  if (!(trotter_dt >= 0.0) || trotter_dt > dt) fail("trotter_dt must lie in [0, dt]");
  if (trotter_dt > 0.0) {
    const double ratio = dt / trotter_dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio) fail("trotter_dt must divide dt");
  }
}

std::size_t QuenchConfig::num_steps() const { return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)); }

PauliSumHamiltonian ising_hamiltonian(const QuenchConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("ising_hamiltonian: n must be at least 2");
  PauliSumHamiltonian h;
  h.n = cfg.n;
  for (std::size_t i = 0; i + 1 < cfg.n; ++i) {
    PauliString p = PauliString::single(cfg.n, i, PauliAxis::X);
    p.set_axis(i + 1, PauliAxis::X);
    h.terms.push_back({cfg.J, p});
  }
  for (std::size_t i = 0; i < cfg.n; ++i) h.terms.push_back({cfg.h_x, PauliString::single(cfg.n, i, PauliAxis::X)});
  for (std::size_t i = 0; i < cfg.n; ++i) h.terms.push_back({cfg.h_z, PauliString::single(cfg.n, i, PauliAxis::Z)});
  return h;
}

PauliSumHamiltonian conjugate_hamiltonian(const PauliSumHamiltonian& h, const CliffordTableau& c) {
  if (c.num_qubits() != h.n) throw std::invalid_argument("conjugate_hamiltonian: size mismatch");
  PauliSumHamiltonian out;
  out.n = h.n;
  out.terms.reserve(h.terms.size());
  for (const PauliTerm& t : h.terms) {
    PauliString p = c.conjugate(t.pauli, Conjugation::backward);
    if (!p.is_hermitian()) throw std::logic_error("conjugate_hamiltonian: non-Hermitian image");
    const double sign = p.sign();
    p.set_phase_power(0);
    out.terms.push_back({t.coeff * sign, p});
  }
  return out;
}

MPO pauli_sum_to_mpo(const PauliSumHamiltonian& h, bool compress) {
  const std::size_t n = h.n;
  if (n == 0) throw std::invalid_argument("pauli_sum_to_mpo: empty register");
  MPO op = MPO::identity(n);
  if (h.terms.empty()) {
    std::fill(op.sites[0].data.begin(), op.sites[0].data.end(), cplx(0.0));
    return op;
  }
  struct Span {
    std::size_t lo, hi;
    double coeff;
  };
  std::vector<Span> spans;
  for (const PauliTerm& t : h.terms) {
    const auto support = t.pauli.support();
    const double c = t.coeff * t.pauli.sign();
    spans.push_back(support.empty() ? Span{0, 0, c} : Span{support.front(), support.back(), c});
  }

  // Channel layout per bond b (between sites b and b+1).
  const std::size_t bonds = n - 1;
  std::vector<int> not_started(bonds, -1), finished(bonds, -1);
  std::vector<std::vector<int>> spanning(spans.size(), std::vector<int>(bonds, -1));
  std::vector<std::size_t> dims(bonds, 0);
  for (std::size_t b = 0; b < bonds; ++b) {
    int count = 0;
    bool any_later = false, any_done = false;
    for (const Span& s : spans) {
      any_later = any_later || s.lo > b;
      any_done = any_done || s.hi <= b;
    }
    if (any_later) not_started[b] = count++;
    if (any_done) finished[b] = count++;
    for (std::size_t t = 0; t < spans.size(); ++t) {
      if (spans[t].lo <= b && b < spans[t].hi) spanning[t][b] = count++;
    }
    dims[b] = static_cast<std::size_t>(count);
  }

  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t left = k == 0 ? 1 : dims[k - 1];
    const std::size_t right = k + 1 == n ? 1 : dims[k];
    const int ns_l = k == 0 ? 0 : not_started[k - 1];
    const int fin_l = k == 0 ? -1 : finished[k - 1];
    const int ns_r = k + 1 == n ? -1 : not_started[k];
    const int fin_r = k + 1 == n ? 0 : finished[k];
    Tensor4 w(left, right);
    if (ns_l >= 0 && ns_r >= 0) w.add_block(static_cast<std::size_t>(ns_l), static_cast<std::size_t>(ns_r), id);
    if (fin_l >= 0 && fin_r >= 0) w.add_block(static_cast<std::size_t>(fin_l), static_cast<std::size_t>(fin_r), id);
    for (std::size_t t = 0; t < spans.size(); ++t) {
      const Span& s = spans[t];
      if (k < s.lo || k > s.hi) continue;
      const Eigen::Matrix2cd pk = axis_matrix(h.terms[t].pauli.axis(k));
      const int from = k == s.lo ? ns_l : spanning[t][k - 1];
      const int to = k == s.hi ? fin_r : spanning[t][k];
      w.add_block(static_cast<std::size_t>(from), static_cast<std::size_t>(to), k == s.lo ? (s.coeff * pk).eval() : pk);
    }
    op.sites[k] = std::move(w);
  }
  return compress ? compress_mpo(std::move(op)) : op;
}

MPO compress_mpo(MPO op, double relative_cutoff) {
  const std::size_t n = op.sites.size();
  if (n < 2) return op;
  RowMatrix q, r;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Tensor4& w = op.sites[k];
    thin_qr(RowMap(w.data.data(), static_cast<Eigen::Index>(w.left * 4), static_cast<Eigen::Index>(w.right)), q, r);
    Tensor4 left_part(w.left, static_cast<std::size_t>(q.cols()));
    RowMap(left_part.data.data(), q.rows(), q.cols()) = q;
    Tensor4& next = op.sites[k + 1];
    Tensor4 merged(static_cast<std::size_t>(r.rows()), next.right);
    RowMap(merged.data.data(), r.rows(), static_cast<Eigen::Index>(4 * next.right)) =
        r * RowMap(next.data.data(), static_cast<Eigen::Index>(next.left), static_cast<Eigen::Index>(4 * next.right));
    w = std::move(left_part);
    next = std::move(merged);
  }
  for (std::size_t k = n - 1; k > 0; --k) {
    Tensor4& w = op.sites[k];
    const RowMatrix m = RowMap(w.data.data(), static_cast<Eigen::Index>(w.left), static_cast<Eigen::Index>(4 * w.right));
    const SvdResult svd = thin_svd(m);
    const Eigen::VectorXd& s = svd.s;
    Eigen::Index keep = 1;
    while (keep < s.size() && s[keep] > relative_cutoff * s[0]) ++keep;
    Tensor4 right_part(static_cast<std::size_t>(keep), w.right);
    RowMap(right_part.data.data(), keep, static_cast<Eigen::Index>(4 * w.right)) = svd.vh.topRows(keep);
    Tensor4& prev = op.sites[k - 1];
    Tensor4 merged(prev.left, static_cast<std::size_t>(keep));
    RowMap(merged.data.data(), static_cast<Eigen::Index>(prev.left * 4), keep) =
        RowMap(prev.data.data(), static_cast<Eigen::Index>(prev.left * 4), static_cast<Eigen::Index>(prev.right)) *
        (svd.u.leftCols(keep) * s.head(keep).asDiagonal());
    w = std::move(right_part);
    prev = std::move(merged);
  }
  return op;
}

namespace {

// Environment: one (bra bond x ket bond) matrix per MPO channel.
using Env = std::vector<RowMatrix>;

Env unit_env() { return Env(1, RowMatrix::Ones(1, 1)); }

// Slices of a flattened (left, d, right) tensor, one left x right matrix per p.
std::vector<RowMatrix> slices(const Eigen::VectorXcd& v, std::size_t left, std::size_t d, std::size_t right) {
  std::vector<RowMatrix> out(d, RowMatrix(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right)));
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t b = 0; b < right; ++b)
        out[p](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v[static_cast<Eigen::Index>((a * d + p) * right + b)];
  return out;
}

Eigen::VectorXcd flatten(const std::vector<RowMatrix>& s, std::size_t left, std::size_t right) {
  const std::size_t d = s.size();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(left * d * right));
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t b = 0; b < right; ++b)
        v[static_cast<Eigen::Index>((a * d + p) * right + b)] = s[p](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return v;
}

Eigen::VectorXcd as_vector(const Tensor3& t) {
  return Eigen::Map<const Eigen::VectorXcd>(t.data.data(), static_cast<Eigen::Index>(t.data.size()));
}

Tensor3 as_tensor(const Eigen::VectorXcd& v, std::size_t left, std::size_t right) {
  Tensor3 t(left, right);
  std::copy(v.data(), v.data() + v.size(), t.data.begin());
  return t;
}

Env update_left(const Env& env, const Tensor3& a, const Tensor4& w) {
  const auto as = slices(as_vector(a), a.left, 2, a.right);
  std::vector<std::array<RowMatrix, 2>> t(w.left);
  for (std::size_t l = 0; l < w.left; ++l)
    for (std::size_t s = 0; s < 2; ++s) t[l][s] = env[l] * as[s];
  Env out(w.right, RowMatrix::Zero(static_cast<Eigen::Index>(a.right), static_cast<Eigen::Index>(a.right)));
  for (std::size_t r = 0; r < w.right; ++r) {
    for (std::size_t so = 0; so < 2; ++so) {
      RowMatrix u = RowMatrix::Zero(t[0][0].rows(), t[0][0].cols());
      bool any = false;
      for (std::size_t l = 0; l < w.left; ++l)
        for (std::size_t si = 0; si < 2; ++si) {
          const cplx c = w(l, so, si, r);
          if (c == cplx(0.0)) continue;
          u += c * t[l][si];
          any = true;
        }
      if (any) out[r] += as[so].adjoint() * u;
    }
  }
  return out;
}

Env update_right(const Env& env, const Tensor3& a, const Tensor4& w) {
  const auto as = slices(as_vector(a), a.left, 2, a.right);
  std::vector<std::array<RowMatrix, 2>> t(w.right);
  for (std::size_t r = 0; r < w.right; ++r)
    for (std::size_t s = 0; s < 2; ++s) t[r][s] = env[r] * as[s].transpose();
  Env out(w.left, RowMatrix::Zero(static_cast<Eigen::Index>(a.left), static_cast<Eigen::Index>(a.left)));
  for (std::size_t l = 0; l < w.left; ++l) {
    for (std::size_t so = 0; so < 2; ++so) {
      RowMatrix u = RowMatrix::Zero(t[0][0].rows(), t[0][0].cols());
      bool any = false;
      for (std::size_t r = 0; r < w.right; ++r)
        for (std::size_t si = 0; si < 2; ++si) {
          const cplx c = w(l, so, si, r);
          if (c == cplx(0.0)) continue;
          u += c * t[r][si];
          any = true;
        }
      if (any) out[l] += as[so].conjugate() * u;
    }
  }
  return out;
}

Eigen::VectorXcd apply_h1(const Env& left_env, const Tensor4& w, const Env& right_env, const Eigen::VectorXcd& v,
                          std::size_t left, std::size_t right) {
  const auto vs = slices(v, left, 2, right);
  std::vector<std::array<RowMatrix, 2>> t(w.left);
  for (std::size_t l = 0; l < w.left; ++l)
    for (std::size_t s = 0; s < 2; ++s) t[l][s] = left_env[l] * vs[s];
  std::vector<RowMatrix> out(2, RowMatrix::Zero(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right)));
  for (std::size_t r = 0; r < w.right; ++r) {
    for (std::size_t so = 0; so < 2; ++so) {
      RowMatrix u = RowMatrix::Zero(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right));
      bool any = false;
      for (std::size_t l = 0; l < w.left; ++l)
        for (std::size_t si = 0; si < 2; ++si) {
          const cplx c = w(l, so, si, r);
          if (c == cplx(0.0)) continue;
          u += c * t[l][si];
          any = true;
        }
      if (any) out[so] += u * right_env[r].transpose();
    }
  }
  return flatten(out, left, right);
}

Eigen::VectorXcd apply_h2(const Env& left_env, const Tensor4& w1, const Tensor4& w2, const Env& right_env,
                          const Eigen::VectorXcd& v, std::size_t left, std::size_t right) {
  const auto vs = slices(v, left, 4, right);  // p = s1 * 2 + s2
  const RowMatrix zero = RowMatrix::Zero(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right));
  std::vector<std::array<RowMatrix, 4>> t(w1.left);
  for (std::size_t l = 0; l < w1.left; ++l)
    for (std::size_t p = 0; p < 4; ++p) t[l][p] = left_env[l] * vs[p];
  // u[m][s1' * 2 + s2]
  std::vector<std::array<RowMatrix, 4>> u(w1.right);
  for (std::size_t m = 0; m < w1.right; ++m)
    for (std::size_t so = 0; so < 2; ++so)
      for (std::size_t s2 = 0; s2 < 2; ++s2) {
        RowMatrix acc = zero;
        for (std::size_t l = 0; l < w1.left; ++l)
          for (std::size_t si = 0; si < 2; ++si) {
            const cplx c = w1(l, so, si, m);
            if (c != cplx(0.0)) acc += c * t[l][si * 2 + s2];
          }
        u[m][so * 2 + s2] = std::move(acc);
      }
  std::vector<RowMatrix> out(4, zero);
  for (std::size_t r = 0; r < w2.right; ++r)
    for (std::size_t s1 = 0; s1 < 2; ++s1)
      for (std::size_t so = 0; so < 2; ++so) {
        RowMatrix acc = zero;
        bool any = false;
        for (std::size_t m = 0; m < w2.left; ++m)
          for (std::size_t si = 0; si < 2; ++si) {
            const cplx c = w2(m, so, si, r);
            if (c == cplx(0.0)) continue;
            acc += c * u[m][s1 * 2 + si];
            any = true;
          }
        if (any) out[s1 * 2 + so] += acc * right_env[r].transpose();
      }
  return flatten(out, left, right);
}

Eigen::VectorXcd apply_h0(const Env& left_env, const Env& right_env, const Eigen::VectorXcd& v, std::size_t left,
                          std::size_t right) {
  const auto c = slices(v, left, 1, right);
  std::vector<RowMatrix> out(1, RowMatrix::Zero(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right)));
  for (std::size_t w = 0; w < left_env.size(); ++w) out[0] += left_env[w] * c[0] * right_env[w].transpose();
  return flatten(out, left, right);
}

std::vector<Env> right_environments(const MPS& mps, const MPO& op) {
  const std::size_t n = mps.num_sites();
  std::vector<Env> envs(n);
  envs[n - 1] = unit_env();
  for (std::size_t k = n - 1; k > 0; --k) envs[k - 1] = update_right(envs[k], mps.tensor(k), op.sites[k]);
  return envs;
}

void check_operator(const MPS& mps, const MPO& op) {
  if (op.sites.size() != mps.num_sites()) throw std::invalid_argument("TDVP: MPO and MPS sizes differ");
}

void tdvp_two_site(MPS& mps, const MPO& op, double dt, const KrylovOptions& kr) {
  const std::size_t n = mps.num_sites();
  const double half = dt / 2;
  mps.move_center(0);
  std::vector<Env> right = right_environments(mps, op);
  std::vector<Env> left(n);
  left[0] = unit_env();
  const TruncationParams trunc = mps.truncation();

  auto evolve_pair = [&](std::size_t k) {
    const Tensor3& a = mps.tensor(k);
    const Tensor3& b = mps.tensor(k + 1);
    const std::size_t l = a.left, r = b.right;
    const RowMatrix block = two_site_block(a, b);
    const Eigen::VectorXcd theta = Eigen::Map<const Eigen::VectorXcd>(block.data(), block.size());
    const Eigen::VectorXcd evolved = krylov_expm(
        [&](const Eigen::VectorXcd& x) { return apply_h2(left[k], op.sites[k], op.sites[k + 1], right[k + 1], x, l, r); },
        theta, half, kr);
    SvdResult svd = truncated_svd(
        ConstRowMap(evolved.data(), static_cast<Eigen::Index>(2 * l), static_cast<Eigen::Index>(2 * r)), trunc);
    mps.add_discarded(svd.discarded);
    svd.s /= svd.s.norm();
    return std::make_pair(std::move(svd), std::make_pair(l, r));
  };

  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto [svd, lr] = evolve_pair(k);
    mps.mutable_tensor(k) = Tensor3::from_left_matrix(svd.u, lr.first);
    mps.mutable_tensor(k + 1) = Tensor3::from_right_matrix(svd.s.asDiagonal() * svd.vh, lr.second);
    left[k + 1] = update_left(left[k], mps.tensor(k), op.sites[k]);
    if (k + 2 < n) {
      Tensor3& b = mps.mutable_tensor(k + 1);
      const std::size_t bl = b.left, br = b.right;
      b = as_tensor(krylov_expm([&](const Eigen::VectorXcd& x) { return apply_h1(left[k + 1], op.sites[k + 1], right[k + 1], x, bl, br); },
                                as_vector(b), -half, kr),
                    bl, br);
    }
  }
  mps.set_center(n - 1);
  for (std::size_t k = n - 1; k-- > 0;) {
    auto [svd, lr] = evolve_pair(k);
    mps.mutable_tensor(k + 1) = Tensor3::from_right_matrix(svd.vh, lr.second);
    mps.mutable_tensor(k) = Tensor3::from_left_matrix(svd.u * svd.s.asDiagonal(), lr.first);
    right[k] = update_right(right[k + 1], mps.tensor(k + 1), op.sites[k + 1]);
    if (k > 0) {
      Tensor3& a = mps.mutable_tensor(k);
      const std::size_t al = a.left, ar = a.right;
      a = as_tensor(krylov_expm([&](const Eigen::VectorXcd& x) { return apply_h1(left[k], op.sites[k], right[k], x, al, ar); },
                                as_vector(a), -half, kr),
                    al, ar);
    }
  }
  mps.set_center(0);
}

void tdvp_one_site(MPS& mps, const MPO& op, double dt, const KrylovOptions& kr) {
  const std::size_t n = mps.num_sites();
  const double half = dt / 2;
  mps.move_center(0);
  std::vector<Env> right = right_environments(mps, op);
  std::vector<Env> left(n);
  left[0] = unit_env();

  auto evolve_site = [&](std::size_t k) {
    Tensor3& a = mps.mutable_tensor(k);
    const std::size_t l = a.left, r = a.right;
    a = as_tensor(krylov_expm([&](const Eigen::VectorXcd& x) { return apply_h1(left[k], op.sites[k], right[k], x, l, r); },
                              as_vector(a), half, kr),
                  l, r);
  };
  auto evolve_bond = [&](const Env& le, const Env& re, const RowMatrix& c) {
    const Eigen::VectorXcd v = flatten({c}, static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()));
    const Eigen::VectorXcd out = krylov_expm(
        [&](const Eigen::VectorXcd& x) {
          return apply_h0(le, re, x, static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()));
        },
        v, -half, kr);
    return slices(out, static_cast<std::size_t>(c.rows()), 1, static_cast<std::size_t>(c.cols()))[0];
  };

  RowMatrix q, r;
  for (std::size_t k = 0; k < n; ++k) {
    evolve_site(k);
    if (k + 1 == n) break;
    Tensor3& a = mps.mutable_tensor(k);
    thin_qr(a.as_left_matrix(), q, r);
    a = Tensor3::from_left_matrix(q, a.left);
    left[k + 1] = update_left(left[k], a, op.sites[k]);
    const RowMatrix c = evolve_bond(left[k + 1], right[k], r);
    Tensor3& b = mps.mutable_tensor(k + 1);
    b = Tensor3::from_right_matrix(c * b.as_right_matrix(), b.right);
  }
  mps.set_center(n - 1);
  for (std::size_t k = n; k-- > 0;) {
    evolve_site(k);
    if (k == 0) break;
    Tensor3& a = mps.mutable_tensor(k);
    thin_qr(a.as_right_matrix().adjoint(), q, r);
    a = Tensor3::from_right_matrix(q.adjoint(), a.right);
    right[k - 1] = update_right(right[k], a, op.sites[k]);
    const RowMatrix c = evolve_bond(left[k], right[k - 1], r.adjoint());
    Tensor3& b = mps.mutable_tensor(k - 1);
    b = Tensor3::from_left_matrix(b.as_left_matrix() * c, b.left);
  }
  mps.set_center(0);
}

}  // namespace

cplx mpo_expectation(const MPS& mps, const MPO& op) {
  check_operator(mps, op);
  Env env = unit_env();
  for (std::size_t k = 0; k < mps.num_sites(); ++k) env = update_left(env, mps.tensor(k), op.sites[k]);
  const double norm2 = mps.norm() * mps.norm();
  return env[0](0, 0) / norm2;
}

void tdvp_step(MPS& mps, const MPO& op, double dt, TdvpVariant variant, const KrylovOptions& krylov) {
  check_operator(mps, op);
  if (mps.num_sites() == 1 || variant == TdvpVariant::one_site) {
    tdvp_one_site(mps, op, dt, krylov);
  } else {
    tdvp_two_site(mps, op, dt, krylov);
  }
}

StateVector exact_evolve(const StateVector& v, const PauliSumHamiltonian& h, double t) {
  if (h.n > kMaxExactEvolveQubits) {
    throw SizeLimitError("exact_evolve refused for " + std::to_string(h.n) + " qubits (limit " +
                         std::to_string(kMaxExactEvolveQubits) + ")");
  }
  if (v.size() != static_cast<Eigen::Index>(std::size_t{1} << h.n)) throw std::invalid_argument("exact_evolve: size mismatch");
  if (t == 0.0) return v;
  const auto substeps = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(t) * h.norm_bound() / 2.0)));
  const double tau = t / static_cast<double>(substeps);
  StateVector out = v;
  for (std::size_t s = 0; s < substeps; ++s) {
    out = krylov_expm([&](const Eigen::VectorXcd& x) { return h.apply(x); }, out, tau);
  }
  return out;
}

MPS matchgate_backprop(const MPS& psi, const QuenchConfig& cfg, double t, double trotter_dt) {
  MPS out = psi;
  out.set_truncation({cfg.chi_max, cfg.svd_cutoff});
  if (t <= 0.0) return out;
  if (!(trotter_dt > 0.0)) throw std::invalid_argument("matchgate_backprop: trotter_dt must be positive");
  const std::size_t n = out.num_sites();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t / trotter_dt)));
  const double delta = t / static_cast<double>(steps);

  auto z_layer = [&](double angle) {
    const Eigen::Matrix2cd g = Eigen::Vector2cd(std::polar(1.0, angle), std::polar(1.0, -angle)).asDiagonal();
    for (std::size_t i = 0; i < n; ++i) out.apply_one_site_gate(g, i);
  };
  const Eigen::Matrix4cd xx = Eigen::Matrix4cd(Eigen::Vector4cd::Ones().asDiagonal()).rowwise().reverse();
  const Eigen::Matrix4cd xx_gate =
      std::cos(cfg.J * delta) * Eigen::Matrix4cd::Identity() + cplx(0.0, std::sin(cfg.J * delta)) * xx;

  z_layer(cfg.h_z * delta / 2);
  for (std::size_t s = 0; s < steps; ++s) {
    if (s % 2 == 0) {
      for (std::size_t i = 0; i + 1 < n; ++i) out.apply_two_site_gate(xx_gate, i, true);
    } else {
      for (std::size_t i = n - 1; i-- > 0;) out.apply_two_site_gate(xx_gate, i, false);
    }
    z_layer(cfg.h_z * delta * (s + 1 == steps ? 0.5 : 1.0));
  }
  return out;
}

namespace {

void advance_plain(MPS& mps, const MPO& op, const QuenchConfig& cfg) {
  if (cfg.variant == TdvpVariant::one_site) mps.expand_bonds(cfg.chi_max);
  tdvp_step(mps, op, cfg.dt, cfg.variant, cfg.krylov);
  if (cfg.variant == TdvpVariant::one_site) mps.compress();
}

// The conjugated Hamiltonian is non-local, so the local TDVP updates only see
// the full tangent space if the bonds are padded first.
void advance_camps(MPS& mps, const MPO& op, const QuenchConfig& cfg) {
  const TruncationParams saved = mps.truncation();
  mps.expand_bonds(cfg.chi_max);
  mps.set_truncation({cfg.chi_max, 0.0});
  tdvp_step(mps, op, cfg.dt, cfg.variant, cfg.krylov);
  mps.set_truncation(saved);
  mps.compress();
}

std::optional<double> sre_density(const CampsState& state) {
  if (state.mps.max_bond() > 1 && state.num_qubits() > kMaxSreExactQubits) return std::nullopt;
  return sre2_camps(state).value / static_cast<double>(state.num_qubits());
}

}  // namespace

std::vector<QuenchRecord> evolve_camps(const QuenchConfig& cfg, const QuenchObserver& observer) {
  cfg.validate();
  const PauliSumHamiltonian h = ising_hamiltonian(cfg);
  const MPO h_mpo = pauli_sum_to_mpo(h);
  const TruncationParams trunc{cfg.chi_max, cfg.svd_cutoff};
  MPS plain = MPS::product_state(std::vector<Eigen::Vector2cd>(cfg.n, site_states::y_plus()), trunc);
  CampsState camps(plain);

  auto record = [&](std::size_t step, std::size_t sweeps) {
    QuenchRecord rec;
    rec.step = step;
    rec.time = static_cast<double>(step) * cfg.dt;
    rec.max_ee_mps = camps.mps.max_entanglement();
    rec.max_ee_state = plain.max_entanglement();
    if (cfg.trotter_dt > 0.0) {
      rec.max_ee_backprop = matchgate_backprop(plain, cfg, rec.time, cfg.trotter_dt).max_entanglement();
    }
    rec.sre_density = sre_density(camps);
    rec.bond_dims = camps.mps.bond_dims();
    rec.max_bond = camps.mps.max_bond();
    rec.sweeps = sweeps;
    rec.energy = mpo_expectation(plain, h_mpo).real();
    return rec;
  };

  std::vector<QuenchRecord> records;
  records.push_back(record(0, 0));
  const std::size_t steps = cfg.num_steps();
  for (std::size_t step = 1; step <= steps; ++step) {
    advance_plain(plain, h_mpo, cfg);
    advance_camps(camps.mps, pauli_sum_to_mpo(conjugate_hamiltonian(h, camps.tableau)), cfg);
    std::size_t sweeps = 0;
    if (cfg.disentangle_every > 0 && step % cfg.disentangle_every == 0) {
      sweeps = greedy_disentangle(camps, cfg.disentangle).sweeps_used;
    }
    records.push_back(record(step, sweeps));
    if (observer) observer(records.back(), camps, plain);
  }
  return records;
}

std::vector<BackpropPoint> matchgate_backprop_ee(const QuenchConfig& cfg, double trotter_dt) {
  cfg.validate();
  const MPO h_mpo = pauli_sum_to_mpo(ising_hamiltonian(cfg));
  MPS plain = MPS::product_state(std::vector<Eigen::Vector2cd>(cfg.n, site_states::y_plus()),
                                 {cfg.chi_max, cfg.svd_cutoff});
  std::vector<BackpropPoint> out;
  const std::size_t steps = cfg.num_steps();
  for (std::size_t step = 0; step <= steps; ++step) {
    if (step > 0) advance_plain(plain, h_mpo, cfg);
    const double t = static_cast<double>(step) * cfg.dt;
    out.push_back({t, plain.max_entanglement(), matchgate_backprop(plain, cfg, t, trotter_dt).max_entanglement()});
  }
  return out;
}

}  // namespace camps
