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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qpolar {

using cplx = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// ---- basic helpers -------------------------------------------------------

ComplexMatrix identity(int d);
ComplexMatrix adjoint(const ComplexMatrix& a);

// Product through the runtime-dispatched gemm kernel.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Hilbert-Schmidt inner product <a, b> = tr(a^dagger b).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hs_norm_sq(const ComplexMatrix& a);
double hs_norm(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column stacking: col(A) = sum_ij A_ij e_j (x) e_i, i.e. entry j*d+i is A_ij.
ComplexVector vec_col(const ComplexMatrix& a);
ComplexMatrix unvec_col(const ComplexVector& v, int rows);

bool all_finite(const ComplexMatrix& a);
bool is_square(const ComplexMatrix& a);
bool is_diagonal(const ComplexMatrix& a, double tol = 0.0);
bool is_hermitian(const ComplexMatrix& a, double rel_tol);
bool is_unitary(const ComplexMatrix& a, double tol);

// Singular values, descending.
RealVector singular_values(const ComplexMatrix& a);
double spectral_norm(const ComplexMatrix& a);

// exp(factor * H) for Hermitian H.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor);

// Makes the largest-magnitude entry real positive (first in row-major order
// among entries tied within 1e-9 relative). Returns the applied phase.
cplx fix_phase_max_entry(ComplexMatrix& a);

// ---- eigendecomposition --------------------------------------------------

struct HermitianEig {
  RealVector values;             // descending
  ComplexMatrix vectors;         // column k pairs with values[k]
  std::vector<bool> degenerate;  // value k lies within tolerance of a neighbour
  bool has_degeneracy() const;
};

// Degeneracy tolerance is 1e-10 * max(1, max |lambda|). Eigenvectors are
// phase-fixed (largest entry real positive) and, inside a degenerate block,
// ordered lexicographically (descending) on entries rounded to 1e-8.
HermitianEig hermitian_eig(const ComplexMatrix& m);

// ---- polar decomposition -------------------------------------------------

struct MatrixPolar {
  ComplexMatrix unitary;    // V
  ComplexMatrix psd;        // |A| = (A^dagger A)^{1/2}
  bool phase_fixed = false;  // tr V was made real positive
  cplx global_phase{1.0, 0.0};  // A = global_phase * V * |A|
  RealVector singular_values;   // descending
  bool full_rank = true;
};

MatrixPolar polar_decompose(const ComplexMatrix& a);

// ---- appendix inequalities -----------------------------------------------

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct NormSandwich {
  double lower = 0.0;   // |A|^2/d + |B|^2/d - 1
  double middle = 0.0;  // |AB|^2/d
  double upper = 0.0;   // min(|A|^2/d, |B|^2/d)
  bool holds = false;
};

// tr(AB)/d >= rho_B trA/d + rho_A trB/d - rho_A rho_B, rho = max eigenvalue.
InequalityCheck check_trace_inequality(const ComplexMatrix& a,
                                       const ComplexMatrix& b);
// |tr(AB)/d| <= min(rho_B tr|A|/d, rho_A tr|B|/d), rho = largest singular value.
InequalityCheck check_vn_inequality(const ComplexMatrix& a,
                                    const ComplexMatrix& b);
// Sandwich for contractions A, B.
NormSandwich check_norm_inequality(const ComplexMatrix& a,
                                   const ComplexMatrix& b);

}  // namespace qpolar
