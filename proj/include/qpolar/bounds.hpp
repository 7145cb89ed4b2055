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

#include <optional>
#include <vector>

#include "qpolar/channel.hpp"
#include "qpolar/report.hpp"

namespace qpolar {

// Ordered circuit; channels[0] acts first. Empty targets mean identities.
struct CircuitSpec {
  std::vector<KrausChannel> channels;
  std::vector<ComplexMatrix> targets;

  int dim() const;
  std::size_t depth() const { return channels.size(); }
  ComplexMatrix target(std::size_t i) const;
  ComplexMatrix composed_target() const;  // U_m ... U_1
};

// Per-element quantities shared by the decay-law evaluators.
struct ElementStats {
  double w1 = 0.0;        // leading canonical weight
  double upsilon = 0.0;   // Upsilon(A_i)
  double phi = 0.0;       // Phi(A_i, U_i)
  double mean_sigma = 0.0;  // tr|A1| / d
  double gamma_decoh = 0.0;
  double gamma_coh = 0.0;
  ComplexMatrix a1;       // leading canonical Kraus operator
  ComplexMatrix v;        // unitary polar factor of a1
};

ElementStats element_stats(const KrausChannel& ch, const ComplexMatrix& target);

BoundReport unitarity_evolution(const CircuitSpec& circuit);
BoundReport fidelity_evolution(const CircuitSpec& circuit);

struct DecoherentFeatures {
  BoundReport monotonicity;
  BoundReport subadditivity;
};
DecoherentFeatures decoherent_features(const CircuitSpec& decoherent_circuit,
                                            const ComplexMatrix& v);

struct UnitarityDecay {
  BoundReport decay;
  BoundReport monotonicity;
  BoundReport subadditivity;
  bool hypothesis_ok = true;  // measured gamma_decoh within the cap
};
UnitarityDecay unitarity_decay(const CircuitSpec& circuit,
                                    std::optional<double> gamma_decoh_cap = std::nullopt);

BoundReport fidelity_decay(const CircuitSpec& decoherent_circuit);

BoundReport max_correction(const KrausChannel& ch, const ComplexMatrix& target,
                                int optimizer_budget = 500, std::uint64_t seed = 0);

BoundReport equable_composition(const ComplexMatrix& v,
                                     const CircuitSpec& decoherent_circuit);

BoundReport max_correction_multi(const CircuitSpec& circuit);

// Inputs for the equable-composition band when the composition is tracked
// incrementally (depth sweeps).
struct EquableBandInput {
  int dim = 2;
  double phi_v = 1.0;        // Phi(V, I)
  double gamma_coh = 0.0;    // of V
  double phi_composed = 1.0;  // Phi(V o D_{m:1}, I)
  double phi_lk_composed = 1.0;  // Phi(V o D*_{m:1}, I)
  std::vector<ElementStats> elements;
};
BoundReport equable_band(const EquableBandInput& in);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
  bool clipped = false;         // an arccos argument left [-1, 1]
  bool angle_saturated = false;  // accumulated angle beyond pi/2, lower set to 0
};
Envelope coherent_envelope(const std::vector<double>& phi_over_upsilon, int d,
                           double prod_upsilon = 1.0);

}  // namespace qpolar
