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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qpolar/channel.hpp"

namespace qpolar {

enum class Family {
  Identity,
  Depolarizing,
  Dephasing,
  StochasticWeyl,
  AmplitudeDamping,
  Rotation,
  RandomUnitaryError,
  RandomCptp,
  PsdLkDecoherent,
  ExtremalDephaser,
  ExtremalUnitary,
  Spiral,
  CoherenceMix,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);  // ParamOutOfRange if unknown

struct FamilySpec {
  Family family = Family::Identity;
  int dim = 2;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

// Parameters per family (ranges are checked, ParamOutOfRange otherwise):
//   depolarizing        p in [0,1]        rho -> p rho + (1-p) I/d
//   dephasing           q in [0,1/2]      (1-q) rho + q/(d-1) sum_b Z^b rho Z^-b
//   stochastic_weyl     p in [0,1]        error probability over the d^2-1
//                       non-identity Weyl operators; uniform=1 for equal
//                       weights, otherwise seeded random weights. d=2 also
//                       accepts px, py, pz.
//   amplitude_damping   gamma in [0,1]    |i> -> |0> decay for every i > 0
//   rotation            theta in (-pi,pi] R(theta) (x) I_{d/2} (even d),
//                                         R(theta) (+) I_{d-2} (odd d)
//   random_unitary_error  strength in [0,pi]  exp(-i strength H), |H| = 1
//   random_cptp         kraus_rank in [1,d^2], optional epsilon > 0 for the
//                       near-identity variant
//   psd_lk_decoherent   strength in (0,0.3]
//   extremal_dephaser   no params: Kraus {sum_{i>0}|i><i|, |0><0|};
//                       random=1 draws diag(sigma) with seeded
//                       outliers (1), outlier_deviation (4e-3),
//                       mean_deviation (5e-5)
//   extremal_unitary    no params: V = -|0><0| + sum_{i>0}|i><i|
//   spiral              alpha, d = 3
//   coherence_mix       r in (0,1/2), level in [0,1], d = 2
KrausChannel make_channel(const FamilySpec& spec);

// ---- building blocks -----------------------------------------------------

ComplexMatrix weyl(int d, int a, int b);  // X^a Z^b
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix rotation_matrix(int d, double theta);

KrausChannel depolarizing(int d, double p);
KrausChannel dephasing(int d, double q);
KrausChannel amplitude_damping(int d, double gamma);
KrausChannel rotation(int d, double theta);
KrausChannel extremal_dephaser(int d);
KrausChannel extremal_unitary(int d);
KrausChannel spiral(double alpha);

// Kraus {diag(sigma), shift * diag(sqrt(1 - sigma^2))}; the two operators are
// orthogonal so diag(sigma) is exactly the LK operator when it dominates.
KrausChannel dephaser_from_sigma(const std::vector<double>& sigma);
KrausChannel random_extremal_dephaser(int d, int outliers, double outlier_deviation,
                                      double mean_deviation, std::uint64_t seed);

struct CoherenceMix {
  KrausChannel channel;  // R(theta) after dephasing(q)
  double theta = 0.0;
  double q = 0.0;
};
// Average infidelity r, of which a fraction `level` is coherent (d = 2).
CoherenceMix coherence_mix(double r, double level);

// ---- random constructions ------------------------------------------------

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng);
ComplexMatrix random_hermitian(int d, std::mt19937_64& rng);
// Hermitian, spectral norm 1.
ComplexMatrix random_unit_hermitian(int d, std::mt19937_64& rng);
// Gaussian matrix with singular values clipped into [0, 1].
ComplexMatrix random_contraction(int d, std::mt19937_64& rng);
ComplexMatrix random_unitary(int d, std::mt19937_64& rng);
ComplexMatrix random_unitary(int d, std::uint64_t seed);
// exp(-i strength H) with a random unit-norm Hermitian H.
ComplexMatrix random_near_identity_unitary(int d, double strength, std::uint64_t seed);

KrausChannel random_cptp(int d, int kraus_rank, std::uint64_t seed);
KrausChannel random_cptp_near_identity(int d, int kraus_rank, double epsilon,
                                       std::uint64_t seed);
KrausChannel psd_lk_decoherent(int d, double strength, std::uint64_t seed);

}  // namespace qpolar
