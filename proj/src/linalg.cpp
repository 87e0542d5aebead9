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

#include "camps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "camps/errors.hpp"

namespace camps {

RowMatrix Tensor3::slice(std::size_t s) const {
  RowMatrix m(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(right));
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r) m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = (*this)(l, s, r);
  return m;
}

Tensor3 Tensor3::from_left_matrix(const RowMatrix& m, std::size_t left) {
  Tensor3 t(left, static_cast<std::size_t>(m.cols()));
  t.as_left_matrix() = m;
  return t;
}

Tensor3 Tensor3::from_right_matrix(const RowMatrix& m, std::size_t right) {
  Tensor3 t(static_cast<std::size_t>(m.rows()), right);
  t.as_right_matrix() = m;
  return t;
}

void Tensor4::add_block(std::size_t l, std::size_t r, const Eigen::Matrix2cd& op) {
  for (std::size_t o = 0; o < 2; ++o)
    for (std::size_t i = 0; i < 2; ++i) (*this)(l, o, i, r) += op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
}

namespace {

// Eigen's BDCSVD (3.4) can return NaN vectors on spectra with exact
// degeneracies, which stabilizer-like states produce routinely.
bool svd_lapack(const RowMatrix& m, bool vectors, Eigen::VectorXd& s, RowMatrix* u, RowMatrix* vh) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  s.resize(k);
  if (vectors) {
    u->resize(rows, k);
    vh->resize(k, cols);
  }
  cplx* pu = vectors ? u->data() : nullptr;
  cplx* pvh = vectors ? vh->data() : nullptr;
  // Row-major LAPACKE checks these even when no vectors are requested.
  const lapack_int ldu = std::max<lapack_int>(k, 1);
  const lapack_int ldvh = std::max<lapack_int>(cols, 1);
  RowMatrix a = m;
  lapack_int info = LAPACKE_zgesdd(LAPACK_ROW_MAJOR, vectors ? 'S' : 'N', rows, cols, a.data(), cols, s.data(), pu,
                                   ldu, pvh, ldvh);
  if (info != 0) {
    a = m;
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(k, 2)));
    const char job = vectors ? 'S' : 'N';
    info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, job, job, rows, cols, a.data(), cols, s.data(), pu, ldu, pvh, ldvh,
                          superb.data());
  }
  if (info != 0 || !s.allFinite()) return false;
  return !vectors || (u->allFinite() && vh->allFinite());
}

}  // namespace

SvdResult thin_svd(const RowMatrix& m) {
  SvdResult out;
  if (!svd_lapack(m, true, out.s, &out.u, &out.vh)) throw NumericalError("thin_svd: LAPACK SVD did not converge");
  return out;
}

SvdResult truncated_svd(const RowMatrix& m, const TruncationParams& params) {
  SvdResult svd = thin_svd(m);
  const Eigen::VectorXd& s = svd.s;
  const auto full = static_cast<std::size_t>(s.size());
  const double total = s.squaredNorm();
  std::size_t keep = std::min<std::size_t>(full, std::max<std::size_t>(params.chi_max, 1));
  if (params.svd_cutoff > 0.0) {
    // Smallest rank whose tail weight stays under the cutoff.
    double tail = 0.0;
    std::size_t rank = full;
    while (rank > 1) {
      const double next = tail + s[static_cast<Eigen::Index>(rank - 1)] * s[static_cast<Eigen::Index>(rank - 1)];
      if (next > params.svd_cutoff * total) break;
      tail = next;
      --rank;
    }
    keep = std::min(keep, rank);
  }
  keep = std::max<std::size_t>(keep, 1);
  SvdResult out;
  const auto k = static_cast<Eigen::Index>(keep);
  out.u = svd.u.leftCols(k);
  out.s = s.head(k);
  out.vh = svd.vh.topRows(k);
  out.discarded = total > 0.0 ? std::max(0.0, 1.0 - out.s.squaredNorm() / total) : 0.0;
  return out;
}

Eigen::VectorXd singular_values(const RowMatrix& m) {
  Eigen::VectorXd s;
  if (!svd_lapack(m, false, s, nullptr, nullptr)) throw NumericalError("singular_values: LAPACK SVD did not converge");
  return s;
}

double entropy_bits(const Eigen::VectorXd& s) {
  const double total = s.squaredNorm();
  if (total <= 0.0) return 0.0;
  double e = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] < 1e-14) continue;
    const double p = s[i] * s[i] / total;
    e -= p * std::log2(p);
  }
  return std::max(e, 0.0);
}

void thin_qr(const RowMatrix& m, RowMatrix& q, RowMatrix& r) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), k);
  r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

namespace {

// Returns true on convergence.
bool lanczos_expm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply, const Eigen::VectorXcd& v,
                  double tau, double tolerance, std::size_t max_dim, Eigen::VectorXcd& result) {
  const double beta0 = v.norm();
  if (beta0 == 0.0) {
    result = v;
    return true;
  }
  const auto dim = static_cast<std::size_t>(v.size());
  max_dim = std::min(max_dim, dim);
  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v / beta0);
  for (std::size_t m = 1; m <= max_dim; ++m) {
    Eigen::VectorXcd w = apply(basis.back());
    alpha.push_back(basis.back().dot(w).real());
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b * b.dot(w);
    }
    const double b_next = w.norm();

    const auto mm = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
    for (Eigen::Index i = 0; i < mm; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < mm) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd& evals = es.eigenvalues();
    const Eigen::MatrixXd& evecs = es.eigenvectors();
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(mm);
    for (Eigen::Index k = 0; k < mm; ++k) {
      const cplx phase = std::polar(1.0, -tau * evals[k]);
      coeffs += evecs.col(k).cast<cplx>() * (phase * evecs(0, k));
    }
    const bool invariant = b_next < 1e-13 * std::max(1.0, std::abs(alpha.back()));
    const double error = beta0 * b_next * std::abs(coeffs[mm - 1]);
    if (invariant || error < tolerance * beta0 || m == dim) {
      result = Eigen::VectorXcd::Zero(v.size());
      for (Eigen::Index k = 0; k < mm; ++k) result += basis[static_cast<std::size_t>(k)] * coeffs[k];
      result *= beta0;
      return true;
    }
    beta.push_back(b_next);
    basis.push_back(w / b_next);
  }
  return false;
}

}  // namespace

Eigen::VectorXcd krylov_expm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                             const Eigen::VectorXcd& v, double tau, const KrylovOptions& options) {
  Eigen::VectorXcd result;
  if (lanczos_expm(apply, v, tau, options.tolerance, options.max_dim, result)) return result;
  if (lanczos_expm(apply, v, tau, options.tolerance, 2 * options.max_dim, result)) return result;
  throw NumericalError("krylov_expm: Lanczos did not converge within " + std::to_string(2 * options.max_dim) +
                       " vectors");
}

}  // namespace camps
