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

#include "qpolar/bounds.hpp"

namespace qpolar {

// One depth of a repeated-element sweep A^m with A = V o D. The equable band
// is evaluated on the rewrite (V o D)^m = V^m o D'_m o ... o D'_1 with
// D'_k = V^{-(k-1)} D V^{k-1}.
struct DepthRow {
  int depth = 0;
  double phi = 0.0;                  // Phi(A^m, I)
  double prod_upsilon = 0.0;         // Upsilon(A)^m
  double decoherent_envelope = 0.0;  // Phi(D, I)^m
  double band_lower = 0.0;
  double band_upper = 0.0;
  bool band_defined = true;      // false when tr V^m vanishes
  double envelope_lower = 0.0;   // coherent envelope, NaN when undefined
  bool non_catastrophic = true;
  BoundReport band;
};

std::vector<DepthRow> repeated_element_sweep(const KrausChannel& element, int max_depth,
                                             bool stop_when_catastrophic = false);

}  // namespace qpolar
