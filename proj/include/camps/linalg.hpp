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

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace camps {

using cplx = std::complex<double>;
using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMatrix>;
using ConstRowMap = Eigen::Map<const RowMatrix>;

/// Rank-3 MPS site tensor (left bond, physical, right bond), row-major.
struct Tensor3 {
  std::size_t left = 1;
  std::size_t right = 1;
  std::vector<cplx> data;

  Tensor3() : data(2, cplx(0.0)) {}
  Tensor3(std::size_t l, std::size_t r) : left(l), right(r), data(l * 2 * r, cplx(0.0)) {}

  cplx& operator()(std::size_t l, std::size_t s, std::size_t r) { return data[(l * 2 + s) * right + r]; }
  cplx operator()(std::size_t l, std::size_t s, std::size_t r) const { return data[(l * 2 + s) * right + r]; }

  /// (left*2) x right view; rows are (l, s).
  RowMap as_left_matrix() { return RowMap(data.data(), static_cast<Eigen::Index>(left * 2), static_cast<Eigen::Index>(right)); }
  ConstRowMap as_left_matrix() const {
    return ConstRowMap(data.data(), static_cast<Eigen::Index>(left * 2), static_cast<Eigen::Index>(right));
  }
  /// left x (2*right) view; columns are (s, r).
  RowMap as_right_matrix() { return RowMap(data.data(), static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(2 * right)); }
  ConstRowMap as_right_matrix() const {
    return ConstRowMap(data.data(), static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(2 * right));
  }
  /// left x right slice for physical index s.
  RowMatrix slice(std::size_t s) const;

  static Tensor3 from_left_matrix(const RowMatrix& m, std::size_t left);
  static Tensor3 from_right_matrix(const RowMatrix& m, std::size_t right);
};

/// Rank-4 MPO site tensor (left bond, physical out, physical in, right bond).
struct Tensor4 {
  std::size_t left = 1;
  std::size_t right = 1;
  std::vector<cplx> data;

  Tensor4() : data(4, cplx(0.0)) {}
  Tensor4(std::size_t l, std::size_t r) : left(l), right(r), data(l * 4 * r, cplx(0.0)) {}

  cplx& operator()(std::size_t l, std::size_t out, std::size_t in, std::size_t r) {
    return data[((l * 2 + out) * 2 + in) * right + r];
  }
  cplx operator()(std::size_t l, std::size_t out, std::size_t in, std::size_t r) const {
    return data[((l * 2 + out) * 2 + in) * right + r];
  }
  /// Adds op (2x2) into the (l, r) channel.
  void add_block(std::size_t l, std::size_t r, const Eigen::Matrix2cd& op);
};

struct TruncationParams {
  std::size_t chi_max = 256;
  /// Largest discarded weight (relative to the total) allowed per cut.
  /// Non-positive values keep every singular value up to chi_max.
  double svd_cutoff = 1e-12;
};

struct SvdResult {
  RowMatrix u;
  Eigen::VectorXd s;
  RowMatrix vh;
  /// Discarded weight relative to the total weight.
  double discarded = 0.0;
};

/// Thin SVD m = u diag(s) vh through LAPACK (gesdd, falling back to gesvd).
/// Throws NumericalError if neither converges.
SvdResult thin_svd(const RowMatrix& m);

/// Thin SVD of `m` followed by truncation under `params`. Singular values are
/// not renormalized.
SvdResult truncated_svd(const RowMatrix& m, const TruncationParams& params);

/// Singular values of `m` only.
Eigen::VectorXd singular_values(const RowMatrix& m);

/// Von Neumann entropy in bits of the Schmidt spectrum `s` (normalized
/// internally); values below 1e-14 are ignored.
double entropy_bits(const Eigen::VectorXd& s);

/// Thin QR: m = q * r with q having min(rows, cols) orthonormal columns.
void thin_qr(const RowMatrix& m, RowMatrix& q, RowMatrix& r);

struct KrylovOptions {
  double tolerance = 1e-12;
  std::size_t max_dim = 40;
};

/// exp(-i * tau * H) v for Hermitian H given through `apply`, by Lanczos.
/// Retries once with a doubled subspace before throwing NumericalError.
Eigen::VectorXcd krylov_expm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                             const Eigen::VectorXcd& v, double tau, const KrylovOptions& options = {});

}  // namespace camps
