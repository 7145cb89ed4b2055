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

#include <cstdint>
#include <utility>

#include "qpolar/channel.hpp"
#include "qpolar/report.hpp"

namespace qpolar {

struct MetricsReport {
  double phi = 0.0;           // process fidelity to the target
  double avg_fidelity = 0.0;  // (d phi + 1)/(d + 1)
  double infidelity = 0.0;    // 1 - avg_fidelity
  double upsilon = 0.0;
  double unitarity = 0.0;
  bool non_catastrophic = false;
  double lk_phi = 0.0;      // phi of the LK map alone
  double lk_upsilon = 0.0;  // w1
};

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;  // sample SD / sqrt(n)
  std::size_t n = 0;
};

// Throws TargetNotUnitary unless u is a d x d unitary within 1e-9.
void require_unitary_target(const ComplexMatrix& u, int d);

// sum_i |<A_i, U>|^2 / d^2; independent of the Kraus representation.
double phi(const KrausChannel& ch, const ComplexMatrix& target);
// Average of the M-fidelities over the matrix-unit basis.
double phi_basis_average(const KrausChannel& ch, const ComplexMatrix& target);
// |tr(U^dagger a)|^2 / d^2 for a single operator.
double phi_operator(const ComplexMatrix& a, const ComplexMatrix& target);

double avg_fidelity(double phi_value, int d);
double infidelity(double phi_value, int d);

// sqrt(sum w_i^2), evaluated as |Gram|_F / d over the given Kraus family.
double upsilon(const KrausChannel& ch);
double upsilon_from_weights(const std::vector<double>& weights);
double unitarity(double upsilon_value, int d);

// <A(M), U M U^dagger> / |M|^2.
cplx m_fidelity(const KrausChannel& ch, const ComplexMatrix& target,
                const ComplexMatrix& m);

bool non_catastrophic(double phi_value, double upsilon_value);
bool non_catastrophic(const KrausChannel& ch, const ComplexMatrix& target);

MetricsReport metrics_report(const KrausChannel& ch, const ComplexMatrix& target);

// first: Upsilon^2 - w1^2 in [0, (1 - Upsilon^2)^2]
// second: Phi - |<A1, U>|^2/d^2 in [0, (1 - Upsilon^2)(1 - Phi)], only when
// the channel is non-catastrophic.
std::pair<BoundReport, BoundReport> lk_gap_bounds(const KrausChannel& ch,
                                                  const ComplexMatrix& target);

McEstimate haar_fidelity_mc(const KrausChannel& ch, const ComplexMatrix& target,
                            std::size_t n_samples, std::uint64_t seed);
McEstimate haar_unitarity_mc(const KrausChannel& ch, std::size_t n_samples,
                             std::uint64_t seed);

}  // namespace qpolar
