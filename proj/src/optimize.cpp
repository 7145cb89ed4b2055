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

#include "qpolar/optimize.hpp"

#include <cmath>
#include <random>

#include "qpolar/errors.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/metrics.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

namespace {

class Objective {
 public:
  Objective(const KrausChannel& ch, const ComplexMatrix& target) : d_(ch.dim) {
    const ComplexMatrix ud = adjoint(target);
    for (const auto& a : ch.kraus) b_.push_back(matmul(a, ud));
  }

  // Phi(W o A, U) = sum |tr(W B_k)|^2 / d^2 with B_k = A_k U^dagger.
  double value(const ComplexMatrix& w) const {
    double s = 0.0;
    for (const auto& b : b_) s += std::norm(trace(matmul(w, b)));
    return s / (static_cast<double>(d_) * d_);
  }

  // Traceless Hermitian ascent direction K for W -> exp(-i eps K) W.
  ComplexMatrix gradient(const ComplexMatrix& w) const {
    ComplexMatrix c = ComplexMatrix::Zero(d_, d_);
    for (const auto& b : b_) {
      const ComplexMatrix wb = matmul(w, b);
      c += std::conj(trace(wb)) * wb;
    }
    c /= static_cast<double>(d_) * d_;
    const cplx i(0.0, 1.0);
    ComplexMatrix k = 0.5 * (-i * c + i * adjoint(c));
    k -= (trace(k) / static_cast<double>(d_)) * identity(d_);
    return k;
  }

 private:
  int d_;
  std::vector<ComplexMatrix> b_;
};

ComplexMatrix traceless(ComplexMatrix h) {
  const int d = static_cast<int>(h.rows());
  h -= (trace(h) / static_cast<double>(d)) * identity(d);
  return h;
}

}  // namespace

CorrectionResult optimize_unitary_correction(const KrausChannel& ch,
                                             const ComplexMatrix& target, int budget,
                                             std::uint64_t seed) {
  const int d = ch.dim;
  if (d > 8) throw Error(ErrorCode::ParamOutOfRange, "optimizer: d > 8");
  if (budget < 1) throw Error(ErrorCode::ParamOutOfRange, "optimizer: budget < 1");
  require_unitary_target(target, d);
  const Objective f(ch, target);
  const ChannelPolar pol = channel_polar(ch);
  CorrectionResult r;
  r.w = matmul(target, adjoint(pol.v));
  r.phi_initial = f.value(r.w);
  r.phi_achieved = r.phi_initial;
  r.evaluations = 1;

  std::mt19937_64 rng(derive_seed(seed, 0x5eed));
  double step = 0.25;
  int failures = 0;
  constexpr int kMaxFailures = 12;
  constexpr double kMinStep = 1e-12;
  while (r.evaluations < budget && failures < kMaxFailures) {
    ComplexMatrix g = f.gradient(r.w);
    double gn = hs_norm(g);
    if (gn < 1e-13 || failures > 0) {
      g = traceless(random_unit_hermitian(d, rng));
      gn = hs_norm(g);
      if (gn == 0.0) break;
    }
    g /= gn;
    bool improved = false;
    double eps = step;
    while (r.evaluations < budget && eps > kMinStep) {
      const ComplexMatrix w_try = matmul(expm_hermitian(g, cplx(0.0, -eps)), r.w);
      const double v = f.value(w_try);
      ++r.evaluations;
      if (v > r.phi_achieved) {
        r.w = w_try;
        r.phi_achieved = v;
        improved = true;
        step = std::min(1.0, 2.0 * eps);
        break;
      }
      eps *= 0.5;
    }
    if (improved) {
      failures = 0;
    } else {
      ++failures;
      step = 0.25;
    }
  }
  r.budget_exhausted = r.evaluations >= budget;
  return r;
}

}  // namespace qpolar
