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

#include "qpolar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpolar/errors.hpp"

namespace qpolar {

namespace {

// Sorted (eigenvalue, operator) pairs -> phase-fixed canonical decomposition.
CanonicalDecomposition finalize(int d, std::vector<ComplexMatrix> ops) {
  CanonicalDecomposition out;
  out.dim = d;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    ComplexMatrix& a = ops[i];
    fix_phase_max_entry(a);
    if (i == 0) {
      const cplx tr = trace(a);
      if (std::abs(tr) > 1e-9) a *= std::conj(tr) / std::abs(tr);
    }
    out.weights.push_back(hs_norm_sq(a) / d);
  }
  out.kraus = std::move(ops);
  out.degenerate_leading =
      out.weights.size() >= 2 && out.weights[0] - out.weights[1] < 1e-10;
  return out;
}

void require_dim(const KrausChannel& ch, const ComplexMatrix& m, const char* what) {
  if (m.rows() != ch.dim || m.cols() != ch.dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": operand must be d x d");
  }
}

CanonicalDecomposition canonical_from_gram(const KrausChannel& ch) {
  const int d = ch.dim;
  const int k = static_cast<int>(ch.kraus.size());
  ComplexMatrix g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      g(i, j) = hs_inner(ch.kraus[static_cast<std::size_t>(i)],
                         ch.kraus[static_cast<std::size_t>(j)]);
      g(j, i) = std::conj(g(i, j));
    }
    g(i, i) = g(i, i).real();
  }
  const HermitianEig eig = hermitian_eig(g);
  std::vector<ComplexMatrix> ops;
  for (int m = 0; m < k; ++m) {
    if (eig.values(m) <= 1e-12 * d) break;
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < k; ++i) {
      const cplx c = eig.vectors(i, m);
      if (c != cplx(0.0)) a += c * ch.kraus[static_cast<std::size_t>(i)];
    }
    ops.push_back(std::move(a));
  }
  return finalize(d, std::move(ops));
}

}  // namespace

KrausChannel::KrausChannel(int d, std::vector<ComplexMatrix> ops)
    : dim(d), kraus(std::move(ops)) {
  if (dim <= 0) throw Error(ErrorCode::DimensionMismatch, "channel dimension must be positive");
  if (kraus.empty()) throw Error(ErrorCode::DimensionMismatch, "channel needs at least one Kraus operator");
  for (const auto& a : kraus) {
    if (a.rows() != dim || a.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape differs from dim");
    }
    if (!all_finite(a)) throw Error(ErrorCode::NonFinite, "Kraus operator has non-finite entry");
  }
}

KrausChannel KrausChannel::identity(int d) { return KrausChannel(d, {qpolar::identity(d)}); }

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  return KrausChannel(static_cast<int>(u.rows()), {u});
}

KrausChannel CanonicalDecomposition::to_channel() const { return KrausChannel(dim, kraus); }

ValidationReport validate_cptp(const KrausChannel& ch) {
  for (const auto& a : ch.kraus) {
    if (a.rows() != ch.dim || a.cols() != ch.dim) {
      throw Error(ErrorCode::DimensionMismatch, "validate_cptp: Kraus shape differs from dim");
    }
  }
  ComplexMatrix s = ComplexMatrix::Zero(ch.dim, ch.dim);
  for (const auto& a : ch.kraus) s += a.adjoint() * a;
  ValidationReport out;
  out.cp_slack = 0.0;  // a Kraus family is CP by construction
  out.tp_slack = (s - identity(ch.dim)).norm();
  out.ok = out.tp_slack <= 1e-9;
  return out;
}

ValidationReport validate_cptp(const ChoiMatrix& choi) {
  const int d = choi.dim;
  if (choi.matrix.rows() != d * d || choi.matrix.cols() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "validate_cptp: Choi matrix must be d^2 x d^2");
  }
  ValidationReport out;
  if (!is_hermitian(choi.matrix, 1e-9)) {
    out.cp_slack = -std::numeric_limits<double>::infinity();
  } else {
    const double lmin = hermitian_eig(choi.matrix).values(d * d - 1);
    out.cp_slack = std::min(0.0, lmin);
  }
  ComplexMatrix pt = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int a = 0; a < d; ++a) pt(i, j) += choi.matrix(i * d + a, j * d + a);
    }
  }
  out.tp_slack = (pt - identity(d)).norm();
  out.ok = out.cp_slack >= -1e-10 * d && out.tp_slack <= 1e-9;
  return out;
}

ChoiMatrix to_choi(const KrausChannel& ch) {
  const int d = ch.dim;
  ChoiMatrix out{d, ComplexMatrix::Zero(d * d, d * d)};
  for (const auto& a : ch.kraus) {
    const ComplexVector c = vec_col(a);
    out.matrix += c * c.adjoint();
  }
  return out;
}

CanonicalDecomposition from_choi(const ChoiMatrix& choi) {
  const int d = choi.dim;
  if (choi.matrix.rows() != d * d || choi.matrix.cols() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "from_choi: Choi matrix must be d^2 x d^2");
  }
  const HermitianEig eig = hermitian_eig(choi.matrix);
  if (eig.values(d * d - 1) < -1e-10 * d) {
    throw Error(ErrorCode::NotCP, "from_choi: Choi matrix has a negative eigenvalue " +
                                      std::to_string(eig.values(d * d - 1)));
  }
  std::vector<ComplexMatrix> ops;
  for (int m = 0; m < d * d; ++m) {
    if (eig.values(m) <= 1e-12 * d) break;
    ops.push_back(std::sqrt(eig.values(m)) * unvec_col(eig.vectors.col(m), d));
  }
  return finalize(d, std::move(ops));
}

CanonicalDecomposition canonical(const KrausChannel& ch) {
  const std::size_t d2 = static_cast<std::size_t>(ch.dim) * static_cast<std::size_t>(ch.dim);
  if (ch.kraus.size() <= d2) return canonical_from_gram(ch);
  return from_choi(to_choi(ch));
}

LKMap lk(const CanonicalDecomposition& can, bool strict) {
  if (strict && can.degenerate_leading) {
    throw Error(ErrorCode::DegenerateLeading, "leading Kraus weight is degenerate");
  }
  LKMap out;
  out.dim = can.dim;
  out.a1 = can.kraus.front();
  out.weight = can.weights.front();
  out.catastrophic_warning = out.weight <= 0.5;
  return out;
}

LKMap lk(const KrausChannel& ch, bool strict) { return lk(canonical(ch), strict); }

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.dim != second.dim) {
    throw Error(ErrorCode::DimensionMismatch, "compose: channel dimensions differ");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.kraus.size() * second.kraus.size());
  for (const auto& b : second.kraus) {
    for (const auto& a : first.kraus) ops.push_back(matmul(b, a));
  }
  KrausChannel out(first.dim, std::move(ops));
  const std::size_t d2 = static_cast<std::size_t>(out.dim) * static_cast<std::size_t>(out.dim);
  if (out.kraus.size() > d2) return canonical(out).to_channel();
  return out;
}

KrausChannel compose(const std::vector<KrausChannel>& chs) {
  if (chs.empty()) throw Error(ErrorCode::DimensionMismatch, "compose: empty sequence");
  KrausChannel acc = chs.front();
  for (std::size_t i = 1; i < chs.size(); ++i) acc = compose(acc, chs[i]);
  return acc;
}

LKMap compose_lk(const std::vector<LKMap>& lks) {
  if (lks.empty()) throw Error(ErrorCode::DimensionMismatch, "compose_lk: empty sequence");
  ComplexMatrix acc = lks.front().a1;
  for (std::size_t i = 1; i < lks.size(); ++i) {
    if (lks[i].dim != lks.front().dim) {
      throw Error(ErrorCode::DimensionMismatch, "compose_lk: dimensions differ");
    }
    acc = matmul(lks[i].a1, acc);
  }
  LKMap out;
  out.dim = lks.front().dim;
  out.weight = hs_norm_sq(acc) / out.dim;
  out.a1 = std::move(acc);
  out.catastrophic_warning = out.weight <= 0.5;
  return out;
}

KrausChannel premultiply(const ComplexMatrix& u, const KrausChannel& ch) {
  require_dim(ch, u, "premultiply");
  std::vector<ComplexMatrix> ops;
  for (const auto& a : ch.kraus) ops.push_back(matmul(u, a));
  return KrausChannel(ch.dim, std::move(ops));
}

KrausChannel postmultiply(const KrausChannel& ch, const ComplexMatrix& u) {
  require_dim(ch, u, "postmultiply");
  std::vector<ComplexMatrix> ops;
  for (const auto& a : ch.kraus) ops.push_back(matmul(a, u));
  return KrausChannel(ch.dim, std::move(ops));
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  require_dim(ch, rho, "apply");
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim, ch.dim);
  for (const auto& a : ch.kraus) out += matmul(matmul(a, rho), a.adjoint());
  return out;
}

Superoperator to_superop(const KrausChannel& ch) {
  const int d = ch.dim;
  Superoperator out{d, ComplexMatrix::Zero(d * d, d * d)};
  for (const auto& a : ch.kraus) out.matrix += kron(a.conjugate(), a);
  return out;
}

}  // namespace qpolar
