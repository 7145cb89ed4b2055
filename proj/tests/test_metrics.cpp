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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qpolar/errors.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/metrics.hpp"
#include "test_util.hpp"

namespace {

using namespace qpolar;
using qpolar::testing::diag;

TEST(MFidelity, Examples) {
  const ComplexMatrix zero = diag({1.0, 0.0});
  EXPECT_NEAR(std::abs(m_fidelity(KrausChannel::identity(2), identity(2), zero) - 1.0), 0.0, 1e-14);
  const cplx dep = m_fidelity(depolarizing(2, 0.9), identity(2), zero);
  EXPECT_NEAR(dep.real(), 0.95, 1e-12);
  EXPECT_NEAR(dep.imag(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m_fidelity(dephasing(2, 0.5), identity(2), pauli_x())), 0.0, 1e-12);
}

TEST(MFidelity, ZeroOperator) {
  try {
    m_fidelity(KrausChannel::identity(2), identity(2), ComplexMatrix::Zero(2, 2));
    FAIL() << "expected ZeroOperator";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOperator);
  }
}

TEST(Phi, Examples) {
  EXPECT_NEAR(phi(KrausChannel::identity(3), identity(3)), 1.0, 1e-14);
  EXPECT_NEAR(phi(rotation(2, M_PI / 6), identity(2)), 0.75, 1e-12);
  EXPECT_NEAR(phi(depolarizing(2, 0.9), identity(2)), 0.925, 1e-12);
}

TEST(Phi, RejectsNonUnitaryTarget) {
  try {
    phi(KrausChannel::identity(2), diag({1.0, 0.5}));
    FAIL() << "expected TargetNotUnitary";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TargetNotUnitary);
  }
}

TEST(Phi, BasisAverageAgrees) {
  for (int d : {2, 3, 4}) {
    const KrausChannel ch = random_cptp(d, 3, 300 + d);
    const ComplexMatrix u = random_unitary(d, std::uint64_t(400 + d));
    EXPECT_NEAR(phi(ch, u), phi_basis_average(ch, u), 1e-10);
  }
}

TEST(AvgFidelity, Examples) {
  EXPECT_NEAR(avg_fidelity(1.0, 2), 1.0, 1e-15);
  EXPECT_NEAR(avg_fidelity(0.925, 2), 0.95, 1e-12);
  EXPECT_NEAR(avg_fidelity(0.0, 2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(infidelity(0.925, 2), 0.05, 1e-12);
}

TEST(Upsilon, Examples) {
  std::mt19937_64 rng(2);
  const KrausChannel u = KrausChannel::unitary(random_unitary(3, rng));
  EXPECT_NEAR(upsilon(u), 1.0, 1e-12);
  EXPECT_NEAR(unitarity(upsilon(u), 3), 1.0, 1e-12);
  const double ud = upsilon(depolarizing(2, 0.9));
  EXPECT_NEAR(ud * ud, 0.8575, 1e-12);
  EXPECT_NEAR(unitarity(ud, 2), 0.81, 1e-12);
  const double ua = upsilon(amplitude_damping(2, 0.19));
  EXPECT_NEAR(ua * ua, 0.82805, 1e-12);
}

TEST(LkGap, Examples) {
  const auto [lu1, lu2] = lk_gap_bounds(rotation(2, 0.3), identity(2));
  EXPECT_NEAR(lu1.observed, 0.0, 1e-14);
  EXPECT_NEAR(lu2.observed, 0.0, 1e-14);
  const auto [d1, d2] = lk_gap_bounds(depolarizing(2, 0.9), identity(2));
  EXPECT_NEAR(d1.observed, 0.8575 - 0.855625, 1e-12);
  EXPECT_NEAR(d1.upper, std::pow(1.0 - 0.8575, 2), 1e-12);
  EXPECT_TRUE(d1.holds);
  EXPECT_TRUE(d2.holds);
  EXPECT_TRUE(d2.applicable);
  const auto [c1, c2] = lk_gap_bounds(depolarizing(2, 0.0), identity(2));
  EXPECT_FALSE(c2.applicable);
}

TEST(LkGap, RandomNonCatastrophicSweep) {
  int checked = 0;
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 150; ++t) {
      const KrausChannel ch = random_cptp_near_identity(d, 1 + t % (d * d), 0.3, 5000 * d + t);
      const ComplexMatrix u = random_unitary(d, std::uint64_t(7000 * d + t));
      const KrausChannel target_ch = premultiply(u, ch);
      if (!non_catastrophic(target_ch, u)) continue;
      const auto [g1, g2] = lk_gap_bounds(target_ch, u);
      ASSERT_TRUE(g1.holds) << d << " " << t;
      ASSERT_TRUE(g2.holds) << d << " " << t;
      ASSERT_GE(g1.observed, -1e-10);
      ASSERT_GE(g2.observed, -1e-10);
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(NonCatastrophic, Examples) {
  EXPECT_TRUE(non_catastrophic(KrausChannel::identity(2), identity(2)));
  EXPECT_NEAR(phi(depolarizing(2, 0.0), identity(2)), 0.25, 1e-12);
  EXPECT_FALSE(non_catastrophic(depolarizing(2, 0.0), identity(2)));
  const KrausChannel r = rotation(2, M_PI / 2);
  EXPECT_NEAR(phi(r, identity(2)), 0.0, 1e-12);
  EXPECT_NEAR(upsilon(r), 1.0, 1e-12);
  EXPECT_FALSE(non_catastrophic(r, identity(2)));
}

TEST(MetricsReport, ExactIdentities) {
  for (int d : {2, 3, 5}) {
    const KrausChannel ch = random_cptp_near_identity(d, 3, 0.2, 60 + d);
    const ComplexMatrix u = identity(d);
    const MetricsReport m = metrics_report(ch, u);
    EXPECT_NEAR(m.avg_fidelity, (d * m.phi + 1.0) / (d + 1.0), 1e-12);
    EXPECT_NEAR(m.infidelity, 1.0 - m.avg_fidelity, 1e-12);
    const double d2 = static_cast<double>(d) * d;
    EXPECT_NEAR(m.unitarity, (d2 * m.upsilon * m.upsilon - 1.0) / (d2 - 1.0), 1e-12);
    EXPECT_GE(m.upsilon * m.upsilon - m.lk_upsilon * m.lk_upsilon, -1e-10);
  }
}

TEST(Metrics, UnitaryInvariance) {
  for (int d : {2, 3, 4}) {
    const KrausChannel ch = random_cptp(d, 2, 90 + d);
    const ComplexMatrix u = random_unitary(d, std::uint64_t(91 + d));
    const ComplexMatrix v = random_unitary(d, std::uint64_t(92 + d));
    EXPECT_NEAR(phi(premultiply(v, ch), v * u), phi(ch, u), 1e-9);
    EXPECT_NEAR(upsilon(premultiply(v, ch)), upsilon(ch), 1e-9);
    EXPECT_NEAR(upsilon(postmultiply(ch, v)), upsilon(ch), 1e-9);
  }
}

TEST(HaarMc, IdentityExact) {
  const McEstimate f = haar_fidelity_mc(KrausChannel::identity(3), identity(3), 200, 1);
  EXPECT_NEAR(f.mean, 1.0, 1e-12);
  const McEstimate u = haar_unitarity_mc(rotation(2, 0.4), 200, 1);
  EXPECT_NEAR(u.mean, 1.0, 1e-12);
}

TEST(HaarMc, WithinThreeStandardErrors) {
  const std::size_t n = 100000;
  const McEstimate dep = haar_fidelity_mc(depolarizing(2, 0.9), identity(2), n, 5);
  EXPECT_LE(std::abs(dep.mean - 0.95), 3.0 * dep.standard_error + 1e-12);
  const double c = std::cos(0.3);
  const McEstimate rot = haar_fidelity_mc(rotation(2, 0.3), identity(2), n, 6);
  EXPECT_LE(std::abs(rot.mean - (2 * c * c + 1) / 3.0), 3.0 * rot.standard_error);
  const McEstimate udep = haar_unitarity_mc(depolarizing(2, 0.9), n, 7);
  EXPECT_LE(std::abs(udep.mean - 0.81), 3.0 * udep.standard_error + 1e-12);
}

// Haar average of the Bloch contraction, from the superoperator restricted to traceless inputs.
double unitarity_oracle(const KrausChannel& ch) {
  const int d = ch.dim;
  const ComplexMatrix s = to_superop(ch).matrix;
  const ComplexVector w = vec_col(identity(d)) / std::sqrt(static_cast<double>(d));
  const ComplexMatrix q = identity(d * d) - w * w.adjoint();
  return hs_norm_sq(s * q) / (d * d - 1.0);
}

TEST(HaarMc, UnitarityMatchesTracelessOracle) {
  const std::size_t n = 100000;
  EXPECT_NEAR(unitarity_oracle(depolarizing(2, 0.9)), 0.81, 1e-12);
  const KrausChannel ad = amplitude_damping(2, 0.19);
  const double oracle = unitarity_oracle(ad);
  // Bloch part diag(0.9, 0.9, 0.81); the translation 0.19 is invisible to the average.
  EXPECT_NEAR(oracle, (0.81 + 0.81 + 0.81 * 0.81) / 3.0, 1e-12);
  const McEstimate uamp = haar_unitarity_mc(ad, n, 8);
  EXPECT_LE(std::abs(uamp.mean - oracle), 3.0 * uamp.standard_error);
  for (int d : {2, 3}) {
    const KrausChannel ch = random_cptp_near_identity(d, 3, 0.3, 77 + d);
    const McEstimate e = haar_unitarity_mc(ch, n, 9 + d);
    EXPECT_LE(std::abs(e.mean - unitarity_oracle(ch)), 4.0 * e.standard_error) << d;
  }
}

TEST(Unitarity, FormulaExactForUnitalChannels) {
  const double ua = upsilon(amplitude_damping(2, 0.19));
  EXPECT_NEAR(unitarity(ua, 2), (4 * 0.82805 - 1) / 3.0, 1e-12);
  const KrausChannel unital(3, {std::sqrt(0.7) * identity(3), std::sqrt(0.2) * weyl(3, 1, 0),
                                std::sqrt(0.1) * weyl(3, 1, 2)});
  EXPECT_NEAR(unitarity(upsilon(unital), 3), unitarity_oracle(unital), 1e-12);
}

TEST(HaarMc, Reproducible) {
  const KrausChannel ch = random_cptp(3, 2, 4);
  const McEstimate a = haar_fidelity_mc(ch, identity(3), 500, 42);
  const McEstimate b = haar_fidelity_mc(ch, identity(3), 500, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_THROW(haar_fidelity_mc(ch, identity(3), 99, 1), Error);
}

}  // namespace
