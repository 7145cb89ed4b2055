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

// Data-parallel complex kernels. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is selected at runtime when the CPU
// supports it. QPOLAR_KERNELS=scalar in the environment forces the reference.

#include <complex>
#include <cstddef>

namespace qpolar::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // sum_i conj(a_i) * b_i
  cplx (*hs_inner)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i |a_i|^2
  double (*sq_norm)(const cplx* a, std::size_t n);
  // c = a * b for row-major a (n x k), b (k x m), c (n x m); c is overwritten
  void (*gemm)(const cplx* a, const cplx* b, cplx* c, std::size_t n,
               std::size_t k, std::size_t m);
};

bool backend_available(Backend b);
const char* backend_name(Backend b);
const KernelTable& table(Backend b);

Backend active_backend();
void set_backend(Backend b);

inline cplx hs_inner(const cplx* a, const cplx* b, std::size_t n) {
  return table(active_backend()).hs_inner(a, b, n);
}
inline double sq_norm(const cplx* a, std::size_t n) {
  return table(active_backend()).sq_norm(a, n);
}
inline void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n,
                 std::size_t k, std::size_t m) {
  table(active_backend()).gemm(a, b, c, n, k, m);
}

namespace scalar {
cplx hs_inner(const cplx* a, const cplx* b, std::size_t n);
double sq_norm(const cplx* a, std::size_t n);
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k,
          std::size_t m);
}  // namespace scalar

namespace avx2 {
cplx hs_inner(const cplx* a, const cplx* b, std::size_t n);
double sq_norm(const cplx* a, std::size_t n);
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k,
          std::size_t m);
}  // namespace avx2

}  // namespace qpolar::kernels
