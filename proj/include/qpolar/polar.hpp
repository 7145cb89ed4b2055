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

#include <string>

#include "qpolar/channel.hpp"

namespace qpolar {

// A = V o D_left = D_right o V, with V the polar unitary of the LK operator.
struct ChannelPolar {
  KrausChannel coherent;          // {V}
  KrausChannel decoherent_left;   // {V^dagger A_i}
  KrausChannel decoherent_right;  // {A_i V^dagger}
  bool unique = false;            // A1 full rank and leading weight simple
  ComplexMatrix v;
  MatrixPolar a1_polar;
  bool catastrophic_warning = false;
};

ChannelPolar channel_polar(const KrausChannel& ch, bool strict = false);

bool is_decoherent(const KrausChannel& ch, double tol = 1e-9);
bool is_psd_operator(const ComplexMatrix& a, double tol);

struct EquabilityReport {
  RealVector sigma;      // singular values of A1, descending
  RealVector lambda_re;  // Re eigenvalues of V (tr V real positive), descending
  double mean_sigma_deficit = 0.0;   // E[1 - sigma]
  double mean_lambda_deficit = 0.0;  // E[1 - Re lambda]
  double Gamma_decoh = 0.0;
  double Gamma_coh = 0.0;
  double gamma_decoh = 0.0;
  double gamma_coh = 0.0;
  double kappa = 0.1;
  double threshold_decoh = 0.0;  // kappa / sqrt(E[1 - sigma])
  double threshold_coh = 0.0;    // kappa / sqrt(E[1 - Re lambda])
  bool sse_ok = false;
  bool wse_ok = false;
  bool extremal_dephaser = false;  // Gamma_decoh fails its threshold
  bool extremal_unitary = false;   // Gamma_coh fails its threshold
};

EquabilityReport equability(const KrausChannel& ch, double kappa = 0.1);
EquabilityReport equability_of_lk(const ComplexMatrix& a1, double kappa = 0.1);

struct InfidelitySplit {
  double r = 0.0;
  double r_coh = 0.0;
  double r_decoh = 0.0;
  double r_decoh_from_u = 0.0;
  double coherence_level = 0.0;         // r_coh / r
  double coherence_level_approx = 0.0;  // (1 - Upsilon) / (1 - Phi)
  double residual = 0.0;                // r - r_coh - r_decoh
};

InfidelitySplit infidelity_split(const KrausChannel& ch, const ComplexMatrix& target);

// Upsilon - Phi <= c (1 - Phi)^2.
bool is_decoherence_limited(const KrausChannel& ch, const ComplexMatrix& target,
                            double c = 1.0);

enum class ChannelType { Decoherent, Coherent, Mixed };

struct Classification {
  ChannelType type = ChannelType::Mixed;
  std::string equability;  // "SSE", "WSE", "non-equable" or "phase-undefined"
  bool extremal_dephaser = false;
  bool extremal_unitary = false;
  double coherence_level = 0.0;  // NaN when the split is undefined
  std::string label;
};

const char* channel_type_name(ChannelType t);
Classification classify(const KrausChannel& ch, const ComplexMatrix& target,
                        double kappa = 0.1);

}  // namespace qpolar
