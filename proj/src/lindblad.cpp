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

#include "qpolar/lindblad.hpp"

#include <cmath>
#include <string>

#include "qpolar/errors.hpp"

namespace qpolar {

namespace {

void validate(const LindbladSpec& spec) {
  const int d = spec.dim;
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "lindblad: dimension must be positive");
  if (spec.hamiltonian.rows() != d || spec.hamiltonian.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "lindblad: hamiltonian has the wrong shape");
  }
  if (!all_finite(spec.hamiltonian)) throw Error(ErrorCode::NonFinite, "lindblad: hamiltonian");
  if (!is_hermitian(spec.hamiltonian, 1e-9)) {
    throw Error(ErrorCode::NotHermitian, "lindblad: hamiltonian is not Hermitian");
  }
  for (const auto& l : spec.lindblad_ops) {
    if (l.rows() != d || l.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "lindblad: operator has the wrong shape");
    }
    if (!all_finite(l)) throw Error(ErrorCode::NonFinite, "lindblad: operator");
  }
}

ComplexMatrix commutator_term(const LindbladSpec& spec) {
  const ComplexMatrix id = identity(spec.dim);
  const ComplexMatrix h = spec.hamiltonian;
  return cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
}

ComplexMatrix anticommutator_term(const LindbladSpec& spec) {
  const int d = spec.dim;
  const ComplexMatrix id = identity(d);
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (const auto& l : spec.lindblad_ops) p += matmul(adjoint(l), l);
  return -0.5 * (kron(id, p) + kron(p.transpose(), id));
}

ComplexMatrix jump_term(const LindbladSpec& spec) {
  const int d = spec.dim;
  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& l : spec.lindblad_ops) j += kron(l.conjugate(), l);
  return j;
}

bool negligible(cplx inner, const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::abs(inner) <= 1e-9 * hs_norm(a) * hs_norm(b);
}

}  // namespace

LindbladStructure lindblad_structure(const LindbladSpec& spec) {
  validate(spec);
  const double scale = static_cast<double>(spec.dim);
  for (std::size_t k = 0; k < spec.lindblad_ops.size(); ++k) {
    const ComplexMatrix& l = spec.lindblad_ops[k];
    if (std::abs(trace(l)) > 1e-9 * std::max(1.0, hs_norm(l) * std::sqrt(scale))) {
      throw Error(ErrorCode::NotTraceless,
                  "lindblad operator " + std::to_string(k) + " has nonzero trace");
    }
  }
  LindbladStructure s;
  s.commutator = commutator_term(spec);
  s.anticommutator = anticommutator_term(spec);
  s.jump = jump_term(spec);
  s.inner_comm_anti = hs_inner(s.commutator, s.anticommutator);
  s.inner_comm_jump = hs_inner(s.commutator, s.jump);
  s.inner_anti_jump = hs_inner(s.anticommutator, s.jump);
  s.orthogonal = negligible(s.inner_comm_anti, s.commutator, s.anticommutator) &&
                 negligible(s.inner_comm_jump, s.commutator, s.jump) &&
                 negligible(s.inner_anti_jump, s.anticommutator, s.jump);
  return s;
}

LindbladSpec canonicalize_lindblad(const LindbladSpec& spec) {
  validate(spec);
  const int d = spec.dim;
  const ComplexMatrix id = identity(d);
  LindbladSpec out;
  out.dim = d;
  out.hamiltonian = spec.hamiltonian;
  for (const auto& l : spec.lindblad_ops) {
    const cplx c = trace(l) / static_cast<double>(d);
    ComplexMatrix l0 = l - c * id;
    // L = L0 + c I moves (i/2)(conj(c) L0 - c L0^dagger) into the Hamiltonian.
    out.hamiltonian += cplx(0.0, 0.5) * (std::conj(c) * l0 - c * adjoint(l0));
    out.lindblad_ops.push_back(std::move(l0));
  }
  out.hamiltonian = 0.5 * (out.hamiltonian + adjoint(out.hamiltonian));
  return out;
}

ComplexMatrix full_lindbladian(const LindbladSpec& spec) {
  validate(spec);
  return commutator_term(spec) + anticommutator_term(spec) + jump_term(spec);
}

}  // namespace qpolar
