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

struct LindbladSpec {
  int dim = 0;
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> lindblad_ops;
};

// Column-stacking superoperator terms of the generator.
struct LindbladStructure {
  ComplexMatrix commutator;     // -i (I (x) H - H^T (x) I)
  ComplexMatrix anticommutator;  // -1/2 sum (I (x) L^dag L + (L^dag L)^T (x) I)
  ComplexMatrix jump;           // sum conj(L) (x) L
  cplx inner_comm_anti{0.0, 0.0};
  cplx inner_comm_jump{0.0, 0.0};
  cplx inner_anti_jump{0.0, 0.0};
  bool orthogonal = false;
};

LindbladStructure lindblad_structure(const LindbladSpec& spec);  // NotTraceless
LindbladSpec canonicalize_lindblad(const LindbladSpec& spec);
ComplexMatrix full_lindbladian(const LindbladSpec& spec);

}  // namespace qpolar
