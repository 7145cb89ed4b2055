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
#include <string>
#include <vector>

#include "qpolar/bounds.hpp"

namespace qpolar {

// Seeded generators for the verification sweeps.
struct NoisyGate {
  KrausChannel channel;  // U o E with E near the identity
  ComplexMatrix target;  // U
};

// Near-identity CPTP error whose average infidelity is at most max_infidelity.
KrausChannel random_small_error(int d, double max_infidelity, std::uint64_t seed);
// Decoherent (PSD leading Kraus) error with average infidelity at most max_infidelity.
KrausChannel random_small_decoherent(int d, double max_infidelity, std::uint64_t seed);
NoisyGate random_noisy_gate(int d, double max_infidelity, std::uint64_t seed);
// Non-catastrophic channel and target over a broad infidelity range.
NoisyGate random_non_catastrophic(int d, std::uint64_t seed);

CircuitSpec random_circuit(int d, int depth, double max_infidelity, std::uint64_t seed);
CircuitSpec random_decoherent_circuit(int d, int depth, double max_infidelity,
                                      std::uint64_t seed);

// Element infidelity cap used by the circuit sweeps: min(1e-2, 0.2/m), which keeps
// m^2 r^2 below 0.1.
double sweep_infidelity_cap(int depth);

struct VerifyOptions {
  std::string suite = "all";  // lemmas | theorems | appendix | all
  std::vector<int> dims;      // empty: suite defaults
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<int> depths{2, 4, 8, 16, 32};
  int optimizer_budget = 500;
};

struct VerifyCase {
  std::string case_id;
  BoundReport report;
};

struct VerifyResult {
  std::vector<VerifyCase> cases;
  std::size_t violations = 0;
  std::size_t inapplicable = 0;
  bool ok() const { return violations == 0; }
};

std::vector<int> default_dims(const std::string& suite);
VerifyResult run_verify(const VerifyOptions& opts);

}  // namespace qpolar
