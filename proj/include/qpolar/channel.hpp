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

#include <vector>

#include "qpolar/matcore.hpp"

namespace qpolar {

// A(rho) = sum_i A_i rho A_i^dagger on d x d matrices.
struct KrausChannel {
  int dim = 0;
  std::vector<ComplexMatrix> kraus;

  KrausChannel() = default;
  // Checks shapes and finiteness; trace preservation is reported by
  // validate_cptp, not enforced here.
  KrausChannel(int dim, std::vector<ComplexMatrix> kraus);

  static KrausChannel identity(int d);
  static KrausChannel unitary(const ComplexMatrix& u);
};

struct ChoiMatrix {
  int dim = 0;
  ComplexMatrix matrix;  // d^2 x d^2, sum_ij E_ij (x) A(E_ij)
};

struct Superoperator {
  int dim = 0;
  ComplexMatrix matrix;  // acts on col(rho)
};

struct CanonicalDecomposition {
  int dim = 0;
  std::vector<ComplexMatrix> kraus;  // mutually orthogonal, descending norm
  std::vector<double> weights;       // |A_i|^2 / d
  bool degenerate_leading = false;

  KrausChannel to_channel() const;
};

struct LKMap {
  int dim = 0;
  ComplexMatrix a1;
  double weight = 0.0;
  bool catastrophic_warning = false;  // weight <= 1/2
};

struct ValidationReport {
  double cp_slack = 0.0;  // most negative Choi eigenvalue, 0 if none
  double tp_slack = 0.0;  // |sum A^dagger A - I|_2
  bool ok = false;
};

ValidationReport validate_cptp(const KrausChannel& ch);
ValidationReport validate_cptp(const ChoiMatrix& choi);

ChoiMatrix to_choi(const KrausChannel& ch);
CanonicalDecomposition from_choi(const ChoiMatrix& choi);
CanonicalDecomposition canonical(const KrausChannel& ch);

LKMap lk(const CanonicalDecomposition& can, bool strict = false);
LKMap lk(const KrausChannel& ch, bool strict = false);

// chs[0] acts first. Product families larger than d^2 are re-canonicalized.
KrausChannel compose(const std::vector<KrausChannel>& chs);
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);
LKMap compose_lk(const std::vector<LKMap>& lks);

// {u A_i}: u applied after ch.
KrausChannel premultiply(const ComplexMatrix& u, const KrausChannel& ch);
// {A_i u}: u applied before ch.
KrausChannel postmultiply(const KrausChannel& ch, const ComplexMatrix& u);

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho);
Superoperator to_superop(const KrausChannel& ch);

}  // namespace qpolar
