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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qpolar/errors.hpp"
#include "qpolar/kernels.hpp"

namespace qpolar::kernels {

namespace {

constexpr KernelTable kScalar{scalar::hs_inner, scalar::sq_norm, scalar::gemm};
#ifdef QPOLAR_HAVE_AVX2
constexpr KernelTable kAvx2{avx2::hs_inner, avx2::sq_norm, avx2::gemm};
#endif

bool cpu_has_avx2() {
#if defined(QPOLAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("QPOLAR_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& table(Backend b) {
#ifdef QPOLAR_HAVE_AVX2
  if (b == Backend::Avx2) return kAvx2;
#endif
  (void)b;
  return kScalar;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw Error(ErrorCode::ParamOutOfRange,
                std::string("kernel backend not available: ") + backend_name(b));
  }
  current().store(b, std::memory_order_relaxed);
}

}  // namespace qpolar::kernels
