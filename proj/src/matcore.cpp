// Copyright 2026 The qpolar Authors
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

#include "qpolar/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qpolar/errors.hpp"
#include "qpolar/kernels.hpp"

namespace qpolar {

namespace {

using ColMatrix = Eigen::MatrixXcd;

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimensions differ");
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) {
    throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
  }
}

std::vector<long long> rounded_key(const ComplexMatrix& vecs, int col) {
  std::vector<long long> key;
  key.reserve(2 * static_cast<std::size_t>(vecs.rows()));
  for (int r = 0; r < vecs.rows(); ++r) {
    key.push_back(std::llround(vecs(r, col).real() * 1e8));
    key.push_back(std::llround(vecs(r, col).imag() * 1e8));
  }
  return key;
}

void fix_phase_column(ComplexMatrix& vecs, int col) {
  double best = 0.0;
  for (int r = 0; r < vecs.rows(); ++r) best = std::max(best, std::abs(vecs(r, col)));
  if (best == 0.0) return;
  for (int r = 0; r < vecs.rows(); ++r) {
    const cplx z = vecs(r, col);
    if (std::abs(z) >= best * (1.0 - 1e-9)) {
      const cplx ph = std::conj(z) / std::abs(z);
      vecs.col(col) *= ph;
      vecs(r, col) = std::abs(z);
      return;
    }
  }
}

}  // namespace

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matmul: inner dimensions differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), static_cast<std::size_t>(a.rows()),
                static_cast<std::size_t>(a.cols()),
                static_cast<std::size_t>(b.cols()));
  return c;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hs_inner: shapes differ");
  }
  return kernels::hs_inner(a.data(), b.data(), static_cast<std::size_t>(a.size()));
}

double hs_norm_sq(const ComplexMatrix& a) {
  return kernels::sq_norm(a.data(), static_cast<std::size_t>(a.size()));
}

double hs_norm(const ComplexMatrix& a) { return std::sqrt(hs_norm_sq(a)); }

cplx trace(const ComplexMatrix& a) { return a.diagonal().sum(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vec_col(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) v(j * a.rows() + i) = a(i, j);
  }
  return v;
}

ComplexMatrix unvec_col(const ComplexVector& v, int rows) {
  const int cols = static_cast<int>(v.size()) / rows;
  if (cols * rows != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "unvec_col: length not divisible");
  }
  ComplexMatrix a(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) a(i, j) = v(j * rows + i);
  }
  return a;
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

bool is_diagonal(const ComplexMatrix& a, double tol) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j && std::abs(a(i, j)) > tol) return false;
    }
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!is_square(a)) return false;
  const double scale = hs_norm(a);
  return (a - a.adjoint()).norm() <= rel_tol * scale + 1e-300;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!is_square(a)) return false;
  const ComplexMatrix g = a.adjoint() * a;
  return (g - ComplexMatrix::Identity(a.rows(), a.cols())).norm() <= tol;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (is_square(a) && is_diagonal(a)) {
    RealVector s = a.diagonal().cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  const ColMatrix m = a;
  Eigen::JacobiSVD<ColMatrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& a) {
  const RealVector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor) {
  const HermitianEig eig = hermitian_eig(h);
  ComplexVector e(eig.values.size());
  for (int i = 0; i < e.size(); ++i) e(i) = std::exp(factor * eig.values(i));
  return eig.vectors * e.asDiagonal() * eig.vectors.adjoint();
}

cplx fix_phase_max_entry(ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a.data()[i]));
  if (best == 0.0) return {1.0, 0.0};
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx z = a.data()[i];
    if (std::abs(z) >= best * (1.0 - 1e-9)) {
      const cplx ph = std::conj(z) / std::abs(z);
      a *= ph;
      a.data()[i] = std::abs(z);
      return ph;
    }
  }
  return {1.0, 0.0};
}

bool HermitianEig::has_degeneracy() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool b) { return b; });
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig");
  const double scale = hs_norm(m);
  if ((m - m.adjoint()).norm() > 1e-8 * scale) {
    throw Error(ErrorCode::NotHermitian, "hermitian_eig: input not Hermitian");
  }
  const int n = static_cast<int>(m.rows());
  RealVector values(n);
  ComplexMatrix vectors(n, n);

  if (is_diagonal(m)) {
    for (int i = 0; i < n; ++i) values(i) = m(i, i).real();
    vectors.setIdentity();
  } else {
    const ColMatrix sym = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ColMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::NoConvergence, "hermitian_eig: solver failed");
    }
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }

  // Descending order, then fix phases.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });
  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    fix_phase_column(out.vectors, k);
  }

  double vmax = 1.0;
  for (int k = 0; k < n; ++k) vmax = std::max(vmax, std::abs(out.values(k)));
  const double tol = 1e-10 * vmax;
  out.degenerate.assign(static_cast<std::size_t>(n), false);

  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && out.values(end - 1) - out.values(end) <= tol) ++end;
    if (end - start > 1) {
      std::vector<int> cols(static_cast<std::size_t>(end - start));
      std::iota(cols.begin(), cols.end(), start);
      std::vector<std::vector<long long>> keys;
      for (int c : cols) keys.push_back(rounded_key(out.vectors, c));
      std::vector<int> idx(cols.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return keys[static_cast<std::size_t>(a)] > keys[static_cast<std::size_t>(b)];
      });
      const ComplexMatrix block = out.vectors.middleCols(start, end - start);
      const RealVector vals = out.values.segment(start, end - start);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        out.vectors.col(start + static_cast<int>(i)) = block.col(idx[i]);
        out.values(start + static_cast<int>(i)) = vals(idx[i]);
        out.degenerate[static_cast<std::size_t>(start) + i] = true;
      }
    }
    start = end;
  }
  return out;
}

MatrixPolar polar_decompose(const ComplexMatrix& a) {
  require_square(a, "polar_decompose");
  require_finite(a, "polar_decompose");
  const int n = static_cast<int>(a.rows());
  MatrixPolar out;

  if (is_diagonal(a)) {
    out.unitary = ComplexMatrix::Identity(n, n);
    out.psd = ComplexMatrix::Zero(n, n);
    RealVector s(n);
    double smax = 0.0;
    for (int i = 0; i < n; ++i) smax = std::max(smax, std::abs(a(i, i)));
    const double tol = 1e-12 * smax;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(a(i, i));
      s(i) = m;
      out.psd(i, i) = m;
      if (m > tol && m > 0.0) {
        out.unitary(i, i) = a(i, i) / m;
      } else {
        out.full_rank = false;
      }
    }
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    out.singular_values = s;
  } else {
    Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ColMatrix& w = svd.matrixU();
    const ColMatrix& x = svd.matrixV();
    const RealVector s = svd.singularValues();
    const double tol = 1e-12 * (s.size() > 0 ? s(0) : 0.0);
    int rank = 0;
    while (rank < n && s(rank) > tol && s(rank) > 0.0) ++rank;
    ColMatrix v = w.leftCols(rank) * x.leftCols(rank).adjoint();
    if (rank < n) {
      out.full_rank = false;
      const int k = n - rank;
      const ColMatrix w0 = w.rightCols(k);
      const ColMatrix x0 = x.rightCols(k);
      const ColMatrix mm = x0.adjoint() * w0;
      Eigen::JacobiSVD<ColMatrix> msvd(mm, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const ColMatrix q = msvd.matrixV() * msvd.matrixU().adjoint();
      v += w0 * q * x0.adjoint();
    }
    out.unitary = v;
    ColMatrix p = x * s.cast<cplx>().asDiagonal() * x.adjoint();
    out.psd = (p + p.adjoint()) * 0.5;
    out.singular_values = s;
  }

  const cplx tr = trace(out.unitary);
  if (std::abs(tr) > 1e-9) {
    const cplx ph = tr / std::abs(tr);
    out.unitary *= std::conj(ph);
    out.global_phase = ph;
    out.phase_fixed = true;
  }
  return out;
}

InequalityCheck check_trace_inequality(const ComplexMatrix& a,
                                       const ComplexMatrix& b) {
  require_same_dim(a, b, "check_trace_inequality");
  if (!is_hermitian(a, 1e-8) || !is_hermitian(b, 1e-8)) {
    throw Error(ErrorCode::NotHermitian, "check_trace_inequality: inputs must be Hermitian");
  }
  const double d = static_cast<double>(a.rows());
  const double rho_a = hermitian_eig(a).values(0);
  const double rho_b = hermitian_eig(b).values(0);
  InequalityCheck out;
  out.lhs = (a * b).trace().real() / d;
  out.rhs = rho_b * trace(a).real() / d + rho_a * trace(b).real() / d - rho_a * rho_b;
  out.holds = out.lhs >= out.rhs - 1e-10;
  return out;
}

InequalityCheck check_vn_inequality(const ComplexMatrix& a,
                                    const ComplexMatrix& b) {
  require_same_dim(a, b, "check_vn_inequality");
  const double d = static_cast<double>(a.rows());
  const RealVector sa = singular_values(a);
  const RealVector sb = singular_values(b);
  InequalityCheck out;
  out.lhs = std::abs((a * b).trace()) / d;
  out.rhs = std::min(sb(0) * sa.sum() / d, sa(0) * sb.sum() / d);
  out.holds = out.lhs <= out.rhs + 1e-10;
  return out;
}

NormSandwich check_norm_inequality(const ComplexMatrix& a,
                                   const ComplexMatrix& b) {
  require_same_dim(a, b, "check_norm_inequality");
  if (spectral_norm(a) > 1.0 + 1e-10 || spectral_norm(b) > 1.0 + 1e-10) {
    throw Error(ErrorCode::NotContraction, "check_norm_inequality: input is not a contraction");
  }
  const double d = static_cast<double>(a.rows());
  const double na = hs_norm_sq(a) / d;
  const double nb = hs_norm_sq(b) / d;
  NormSandwich out;
  out.lower = na + nb - 1.0;
  out.middle = (a * b).squaredNorm() / d;
  out.upper = std::min(na, nb);
  out.holds = out.lower <= out.middle + 1e-10 && out.middle <= out.upper + 1e-10;
  return out;
}

}  // namespace qpolar
