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

#include "qpolar/metrics.hpp"

#include <cmath>
#include <random>

#include "qpolar/errors.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

namespace {

struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void push(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  McEstimate result() const {
    McEstimate e;
    e.n = n;
    e.mean = mean;
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    e.standard_error = std::sqrt(var / static_cast<double>(n));
    return e;
  }
};

void haar_state(std::uint64_t seed, std::size_t index, std::vector<cplx>& psi) {
  SplitMix64 rng(derive_seed(seed, index));
  std::normal_distribution<double> nd(0.0, 1.0);
  double norm = 0.0;
  for (auto& z : psi) {
    const double re = nd(rng);
    const double im = nd(rng);
    z = cplx(re, im);
    norm += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& z : psi) z *= inv;
}

void matvec(const ComplexMatrix& a, const std::vector<cplx>& x, std::vector<cplx>& y) {
  const int d = static_cast<int>(a.rows());
  const cplx* p = a.data();
  for (int r = 0; r < d; ++r) {
    cplx s = 0.0;
    for (int c = 0; c < d; ++c) s += p[r * d + c] * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = s;
  }
}

}  // namespace

void require_unitary_target(const ComplexMatrix& u, int d) {
  if (u.rows() != d || u.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "target must be d x d");
  }
  if (!is_unitary(u, 1e-9)) throw Error(ErrorCode::TargetNotUnitary, "target is not unitary");
}

double phi_operator(const ComplexMatrix& a, const ComplexMatrix& target) {
  const double d = static_cast<double>(a.rows());
  return std::norm(hs_inner(target, a)) / (d * d);
}

double phi(const KrausChannel& ch, const ComplexMatrix& target) {
  require_unitary_target(target, ch.dim);
  double s = 0.0;
  for (const auto& a : ch.kraus) s += phi_operator(a, target);
  return s;
}

double phi_basis_average(const KrausChannel& ch, const ComplexMatrix& target) {
  require_unitary_target(target, ch.dim);
  const int d = ch.dim;
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      s += m_fidelity(ch, target, e).real();
    }
  }
  return s / (static_cast<double>(d) * d);
}

double avg_fidelity(double phi_value, int d) {
  return (d * phi_value + 1.0) / (d + 1.0);
}

double infidelity(double phi_value, int d) { return 1.0 - avg_fidelity(phi_value, d); }

double upsilon(const KrausChannel& ch) {
  const std::size_t k = ch.kraus.size();
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double nii = hs_norm_sq(ch.kraus[i]);
    s += nii * nii;
    for (std::size_t j = i + 1; j < k; ++j) {
      s += 2.0 * std::norm(hs_inner(ch.kraus[i], ch.kraus[j]));
    }
  }
  return std::sqrt(s) / ch.dim;
}

double upsilon_from_weights(const std::vector<double>& weights) {
  double s = 0.0;
  for (double w : weights) s += w * w;
  return std::sqrt(s);
}

double unitarity(double upsilon_value, int d) {
  const double d2 = static_cast<double>(d) * d;
  return (d2 * upsilon_value * upsilon_value - 1.0) / (d2 - 1.0);
}

cplx m_fidelity(const KrausChannel& ch, const ComplexMatrix& target,
                const ComplexMatrix& m) {
  require_unitary_target(target, ch.dim);
  const double n2 = hs_norm_sq(m);
  if (!(n2 > 0.0)) throw Error(ErrorCode::ZeroOperator, "m_fidelity: M has zero norm");
  const ComplexMatrix out = apply(ch, m);
  const ComplexMatrix ideal = matmul(matmul(target, m), target.adjoint());
  return hs_inner(out, ideal) / n2;
}

bool non_catastrophic(double phi_value, double upsilon_value) {
  return phi_value > 0.5 && upsilon_value * upsilon_value > 0.5;
}

bool non_catastrophic(const KrausChannel& ch, const ComplexMatrix& target) {
  return non_catastrophic(phi(ch, target), upsilon(ch));
}

MetricsReport metrics_report(const KrausChannel& ch, const ComplexMatrix& target) {
  const CanonicalDecomposition can = canonical(ch);
  MetricsReport r;
  r.phi = phi(ch, target);
  r.avg_fidelity = avg_fidelity(r.phi, ch.dim);
  r.infidelity = 1.0 - r.avg_fidelity;
  r.upsilon = upsilon_from_weights(can.weights);
  r.unitarity = unitarity(r.upsilon, ch.dim);
  r.non_catastrophic = non_catastrophic(r.phi, r.upsilon);
  r.lk_phi = phi_operator(can.kraus.front(), target);
  r.lk_upsilon = can.weights.front();
  return r;
}

std::pair<BoundReport, BoundReport> lk_gap_bounds(const KrausChannel& ch,
                                                  const ComplexMatrix& target) {
  const CanonicalDecomposition can = canonical(ch);
  const double w1 = can.weights.front();
  const double ups = upsilon_from_weights(can.weights);
  const double ups2 = ups * ups;
  const double ph = phi(ch, target);
  const double one_minus = 1.0 - ups2;

  BoundReport unitarity_gap = make_report(
      "lk_gap_unitarity", ups2 - w1 * w1, 0.0, one_minus * one_minus,
      {{"upsilon_sq", ups2}, {"w1_sq", w1 * w1}, {"one_minus_upsilon_sq_sq", one_minus * one_minus}});

  if (!non_catastrophic(ph, ups)) {
    return {unitarity_gap,
            inapplicable_report("lk_gap_fidelity", "channel is catastrophic for this target")};
  }
  const double lk_ph = phi_operator(can.kraus.front(), target);
  BoundReport fidelity_gap = make_report(
      "lk_gap_fidelity", ph - lk_ph, 0.0, one_minus * (1.0 - ph),
      {{"phi", ph}, {"lk_phi", lk_ph}, {"one_minus_upsilon_sq", one_minus}, {"one_minus_phi", 1.0 - ph}});
  return {unitarity_gap, fidelity_gap};
}

McEstimate haar_fidelity_mc(const KrausChannel& ch, const ComplexMatrix& target,
                            std::size_t n_samples, std::uint64_t seed) {
  require_unitary_target(target, ch.dim);
  if (n_samples < 100) throw Error(ErrorCode::ParamOutOfRange, "haar_fidelity_mc needs n >= 100");
  const std::size_t d = static_cast<std::size_t>(ch.dim);
  std::vector<cplx> psi(d), upsi(d), apsi(d);
  Welford acc;
  for (std::size_t i = 0; i < n_samples; ++i) {
    haar_state(seed, i, psi);
    matvec(target, psi, upsi);
    double f = 0.0;
    for (const auto& a : ch.kraus) {
      matvec(a, psi, apsi);
      cplx ov = 0.0;
      for (std::size_t r = 0; r < d; ++r) ov += std::conj(upsi[r]) * apsi[r];
      f += std::norm(ov);
    }
    acc.push(f);
  }
  return acc.result();
}

McEstimate haar_unitarity_mc(const KrausChannel& ch, std::size_t n_samples,
                             std::uint64_t seed) {
  if (n_samples < 100) throw Error(ErrorCode::ParamOutOfRange, "haar_unitarity_mc needs n >= 100");
  const int di = ch.dim;
  const std::size_t d = static_cast<std::size_t>(di);
  ComplexMatrix a_of_identity = ComplexMatrix::Zero(di, di);
  for (const auto& a : ch.kraus) a_of_identity += a * a.adjoint();
  a_of_identity /= static_cast<double>(di);
  const double denom = 1.0 - 1.0 / static_cast<double>(di);
  std::vector<cplx> psi(d), apsi(d), out(d * d);
  Welford acc;
  for (std::size_t i = 0; i < n_samples; ++i) {
    haar_state(seed, i, psi);
    for (std::size_t r = 0; r < d * d; ++r) out[r] = -a_of_identity.data()[r];
    for (const auto& a : ch.kraus) {
      matvec(a, psi, apsi);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) out[r * d + c] += apsi[r] * std::conj(apsi[c]);
      }
    }
    double n2 = 0.0;
    for (const auto& z : out) n2 += std::norm(z);
    acc.push(n2 / denom);
  }
  return acc.result();
}

}  // namespace qpolar
