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

#include "qpolar/channel.hpp"

namespace qpolar {

struct CorrectionResult {
  ComplexMatrix w;
  double phi_initial = 0.0;   // at W0 = U V^dagger
  double phi_achieved = 0.0;
  int evaluations = 0;
  bool budget_exhausted = false;
};

// Seeded local ascent of Phi(W o A, U) over W in SU(d), started at the polar
// correction. Deterministic; phi_achieved is non-decreasing in budget.
CorrectionResult optimize_unitary_correction(const KrausChannel& ch,
                                             const ComplexMatrix& target,
                                             int budget = 500, std::uint64_t seed = 0);

}  // namespace qpolar
