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

#include "qpolar/polar.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qpolar/errors.hpp"
#include "qpolar/metrics.hpp"

namespace qpolar {

namespace {

struct SpreadConstants {
  double mean_deficit = 0.0;
  double worst = 0.0;   // (1 - min x) / E[1 - x]
  double spread = 0.0;  // SD[x] / E[1 - x]
  double threshold = std::numeric_limits<double>::infinity();
};

SpreadConstants spread_constants(const RealVector& x, double kappa) {
  SpreadConstants c;
  const double n = static_cast<double>(x.size());
  double max_dev = 0.0;
  for (int i = 0; i < x.size(); ++i) max_dev = std::max(max_dev, std::abs(1.0 - x(i)));
  const double mean = x.mean();
  c.mean_deficit = 1.0 - mean;
  if (max_dev <= 1e-12) return c;
  const double var = std::max(0.0, (x.array() - mean).square().sum() / n);
  c.worst = (1.0 - x.minCoeff()) / c.mean_deficit;
  c.spread = std::sqrt(var) / c.mean_deficit;
  if (c.mean_deficit > 0.0) c.threshold = kappa / std::sqrt(c.mean_deficit);
  return c;
}

RealVector eigenvalues_real_part(const ComplexMatrix& v) {
  RealVector re(v.rows());
  if (is_diagonal(v)) {
    for (int i = 0; i < v.rows(); ++i) re(i) = v(i, i).real();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(v), false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::NoConvergence, "eigenvalues of V did not converge");
    }
    re = solver.eigenvalues().real();
  }
  std::sort(re.data(), re.data() + re.size(), std::greater<>());
  return re;
}

}  // namespace

ChannelPolar channel_polar(const KrausChannel& ch, bool strict) {
  const CanonicalDecomposition can = canonical(ch);
  if (strict && can.degenerate_leading) {
    throw Error(ErrorCode::DegenerateLeading, "leading Kraus weight is degenerate");
  }
  ChannelPolar out;
  out.a1_polar = polar_decompose(can.kraus.front());
  out.v = out.a1_polar.unitary;
  out.unique = out.a1_polar.full_rank && !can.degenerate_leading;
  out.coherent = KrausChannel::unitary(out.v);
  const ComplexMatrix vdag = out.v.adjoint();
  std::vector<ComplexMatrix> left, right;
  for (const auto& a : can.kraus) {
    left.push_back(matmul(vdag, a));
    right.push_back(matmul(a, vdag));
  }
  out.decoherent_left = KrausChannel(ch.dim, std::move(left));
  out.decoherent_right = KrausChannel(ch.dim, std::move(right));
  out.catastrophic_warning = can.weights.front() <= 0.5;
  return out;
}

bool is_psd_operator(const ComplexMatrix& a, double tol) {
  const double scale = std::max(1.0, hs_norm(a));
  if ((a - a.adjoint()).norm() > tol * scale) return false;
  const ComplexMatrix sym = (a + a.adjoint()) * 0.5;
  const HermitianEig eig = hermitian_eig(sym);
  return eig.values(eig.values.size() - 1) >= -tol;
}

bool is_decoherent(const KrausChannel& ch, double tol) {
  return is_psd_operator(canonical(ch).kraus.front(), tol);
}

EquabilityReport equability_of_lk(const ComplexMatrix& a1, double kappa) {
  const MatrixPolar pol = polar_decompose(a1);
  if (!pol.phase_fixed) {
    throw Error(ErrorCode::PhaseUndefined, "tr V vanishes; phase convention undefined");
  }
  EquabilityReport r;
  r.kappa = kappa;
  r.sigma = pol.singular_values;
  r.lambda_re = eigenvalues_real_part(pol.unitary);
  const SpreadConstants dec = spread_constants(r.sigma, kappa);
  const SpreadConstants coh = spread_constants(r.lambda_re, kappa);
  r.mean_sigma_deficit = dec.mean_deficit;
  r.mean_lambda_deficit = coh.mean_deficit;
  r.Gamma_decoh = dec.worst;
  r.gamma_decoh = dec.spread;
  r.Gamma_coh = coh.worst;
  r.gamma_coh = coh.spread;
  r.threshold_decoh = dec.threshold;
  r.threshold_coh = coh.threshold;
  r.sse_ok = r.Gamma_decoh < r.threshold_decoh && r.Gamma_coh < r.threshold_coh;
  r.wse_ok = r.gamma_decoh < r.threshold_decoh && r.gamma_coh < r.threshold_coh;
  r.extremal_dephaser = !(r.Gamma_decoh < r.threshold_decoh);
  r.extremal_unitary = !(r.Gamma_coh < r.threshold_coh);
  return r;
}

EquabilityReport equability(const KrausChannel& ch, double kappa) {
  return equability_of_lk(canonical(ch).kraus.front(), kappa);
}

InfidelitySplit infidelity_split(const KrausChannel& ch, const ComplexMatrix& target) {
  require_unitary_target(target, ch.dim);
  const int d = ch.dim;
  const CanonicalDecomposition can = canonical(ch);
  const double ph = phi(ch, target);
  const double ups = upsilon_from_weights(can.weights);
  if (!non_catastrophic(ph, ups)) {
    throw Error(ErrorCode::NotNonCatastrophic, "infidelity_split needs a non-catastrophic channel");
  }
  const MatrixPolar pol = polar_decompose(can.kraus.front());
  double phi_d = 0.0;
  for (const auto& a : can.kraus) phi_d += phi_operator(a, pol.unitary);
  const double dd = static_cast<double>(d);
  InfidelitySplit s;
  s.r = infidelity(ph, d);
  s.r_coh = infidelity(phi_operator(pol.unitary, target), d);
  s.r_decoh = infidelity(phi_d, d);
  const double u = unitarity(ups, d);
  s.r_decoh_from_u = (dd - std::sqrt((dd * dd - 1.0) * u + 1.0)) / (dd + 1.0);
  s.coherence_level = s.r > 0.0 ? s.r_coh / s.r : 0.0;
  s.coherence_level_approx = ph < 1.0 ? (1.0 - ups) / (1.0 - ph) : 0.0;
  s.residual = s.r - s.r_coh - s.r_decoh;
  return s;
}

bool is_decoherence_limited(const KrausChannel& ch, const ComplexMatrix& target, double c) {
  const double ph = phi(ch, target);
  const double ups = upsilon(ch);
  if (!non_catastrophic(ph, ups)) {
    throw Error(ErrorCode::NotNonCatastrophic, "is_decoherence_limited needs a non-catastrophic channel");
  }
  const double process_infidelity = 1.0 - ph;
  return ups - ph <= c * process_infidelity * process_infidelity + 1e-15;
}

const char* channel_type_name(ChannelType t) {
  switch (t) {
    case ChannelType::Decoherent: return "Decoherent";
    case ChannelType::Coherent: return "Coherent";
    case ChannelType::Mixed: return "Coherent and decoherent";
  }
  return "Unknown";
}

Classification classify(const KrausChannel& ch, const ComplexMatrix& target, double kappa) {
  const CanonicalDecomposition can = canonical(ch);
  const ComplexMatrix& a1 = can.kraus.front();
  Classification c;
  if (is_psd_operator(a1, 1e-9)) {
    c.type = ChannelType::Decoherent;
  } else if (can.weights.front() >= 1.0 - 1e-9) {
    c.type = ChannelType::Coherent;
  } else {
    c.type = ChannelType::Mixed;
  }
  try {
    const EquabilityReport eq = equability_of_lk(a1, kappa);
    c.equability = eq.sse_ok ? "SSE" : (eq.wse_ok ? "WSE" : "non-equable");
    c.extremal_dephaser = eq.extremal_dephaser;
    c.extremal_unitary = eq.extremal_unitary;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PhaseUndefined) throw;
    c.equability = "phase-undefined";
  }
  try {
    c.coherence_level = infidelity_split(ch, target).coherence_level;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotNonCatastrophic) throw;
    c.coherence_level = std::numeric_limits<double>::quiet_NaN();
  }
  c.label = std::string(channel_type_name(c.type)) + ", " + c.equability;
  return c;
}

}  // namespace qpolar
