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

#include "qpolar/kernels.hpp"

namespace qpolar::kernels::scalar {

cplx hs_inner(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sq_norm(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k,
          std::size_t m) {
  for (std::size_t i = 0; i < n * m; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real(), ai = a[i * k + p].imag();
      const cplx* brow = b + p * m;
      for (std::size_t j = 0; j < m; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

}  // namespace qpolar::kernels::scalar
