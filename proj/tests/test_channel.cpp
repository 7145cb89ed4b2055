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

#include <algorithm>
#include <cmath>
#include <random>

#include "qpolar/channel.hpp"
#include "qpolar/errors.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/metrics.hpp"
#include "test_util.hpp"

namespace {

using namespace qpolar;
using qpolar::testing::action_gap;
using qpolar::testing::diag;
using qpolar::testing::max_abs_diff;
using qpolar::testing::random_density;

KrausChannel bit_flip(double delta) {
  return KrausChannel(2, {std::sqrt(1.0 - delta) * identity(2), std::sqrt(delta) * pauli_x()});
}

TEST(Validate, Examples) {
  const ValidationReport id = validate_cptp(KrausChannel::identity(2));
  EXPECT_TRUE(id.ok);
  EXPECT_NEAR(id.cp_slack, 0.0, 1e-14);
  EXPECT_NEAR(id.tp_slack, 0.0, 1e-14);
  EXPECT_TRUE(validate_cptp(bit_flip(0.1)).ok);
  const ValidationReport twice = validate_cptp(KrausChannel(2, {identity(2), identity(2)}));
  EXPECT_FALSE(twice.ok);
  EXPECT_NEAR(twice.tp_slack, hs_norm(identity(2)), 1e-12);
}

TEST(Validate, ChoiForm) {
  EXPECT_TRUE(validate_cptp(to_choi(amplitude_damping(2, 0.3))).ok);
  ChoiMatrix bad = to_choi(KrausChannel::identity(2));
  bad.matrix(0, 0) -= 0.5;
  EXPECT_FALSE(validate_cptp(bad).ok);
}

TEST(Validate, DimensionMismatch) {
  EXPECT_THROW(KrausChannel(2, {identity(3)}), Error);
}

TEST(Choi, UnitaryIsRankOne) {
  std::mt19937_64 rng(1);
  const ComplexMatrix u = random_unitary(3, rng);
  const ChoiMatrix c = to_choi(KrausChannel::unitary(u));
  const ComplexVector v = vec_col(u);
  EXPECT_LE(max_abs_diff(c.matrix, v * v.adjoint()), 1e-12);
  const CanonicalDecomposition can = from_choi(c);
  ASSERT_EQ(can.kraus.size(), 1u);
  EXPECT_NEAR(can.weights[0], 1.0, 1e-12);
  EXPECT_NEAR(std::abs(hs_inner(can.kraus[0], u)), 3.0, 1e-10);
}

TEST(Choi, MatchesElementaryDefinition) {
  // Oracle: sum_ij E_ij (x) A(E_ij).
  const KrausChannel ch = random_cptp(2, 3, 5);
  const int d = 2;
  ComplexMatrix expect = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      expect += kron(e, qpolar::apply(ch, e));
    }
  }
  EXPECT_LE(max_abs_diff(to_choi(ch).matrix, expect), 1e-12);
}

TEST(Choi, RoundTrip) {
  for (int d : {2, 3, 4}) {
    const KrausChannel ch = random_cptp(d, d + 1, 40 + d);
    const ChoiMatrix c = to_choi(ch);
    const ChoiMatrix back = to_choi(from_choi(c).to_channel());
    EXPECT_LE(max_abs_diff(c.matrix, back.matrix), 1e-9);
  }
}

TEST(Choi, NotCpRejected) {
  ChoiMatrix c = to_choi(KrausChannel::identity(2));
  c.matrix(1, 1) = -0.5;
  try {
    from_choi(c);
    FAIL() << "expected NotCP";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCP);
  }
}

TEST(Canonical, MixtureOfIdentityAndRotation) {
  const double th = 0.2;
  const KrausChannel ch(2, {std::sqrt(0.5) * identity(2), std::sqrt(0.5) * rotation_matrix(2, th)});
  const CanonicalDecomposition can = canonical(ch);
  ASSERT_EQ(can.kraus.size(), 2u);
  EXPECT_NEAR(can.weights[0], (1.0 + std::cos(th)) / 2.0, 1e-12);
  EXPECT_NEAR(can.weights[0], 0.990033, 1e-6);
  const ComplexMatrix dir = identity(2) + rotation_matrix(2, th);
  const double overlap = std::abs(hs_inner(dir, can.kraus[0]));
  EXPECT_NEAR(overlap, hs_norm(dir) * hs_norm(can.kraus[0]), 1e-10);
}

TEST(Canonical, AmplitudeDamping) {
  const CanonicalDecomposition can = canonical(amplitude_damping(2, 0.19));
  ASSERT_EQ(can.kraus.size(), 2u);
  EXPECT_NEAR(can.weights[0], 0.905, 1e-12);
  EXPECT_NEAR(can.weights[1], 0.095, 1e-12);
  EXPECT_LE(max_abs_diff(can.kraus[0], diag({1.0, 0.9})), 1e-12);
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 1) = std::sqrt(0.19);
  EXPECT_LE(max_abs_diff(can.kraus[1], a2), 1e-12);
}

TEST(Canonical, AlreadyCanonical) {
  const CanonicalDecomposition can = canonical(bit_flip(0.1));
  ASSERT_EQ(can.kraus.size(), 2u);
  EXPECT_NEAR(can.weights[0], 0.9, 1e-12);
  EXPECT_NEAR(can.weights[1], 0.1, 1e-12);
  EXPECT_LE(max_abs_diff(can.kraus[0], std::sqrt(0.9) * identity(2)), 1e-12);
  EXPECT_LE(max_abs_diff(can.kraus[1], std::sqrt(0.1) * pauli_x()), 1e-12);
  EXPECT_FALSE(can.degenerate_leading);
}

TEST(Canonical, DepolarizingFromNonOrthogonalForm) {
  // p rho + (1-p) I/2 written with matrix units |i><j|.
  const double p = 0.9;
  const double s = std::sqrt((1.0 - p) / 2.0);
  const ComplexMatrix e0 = diag({1.0, 0.0});
  const ComplexMatrix e1 = diag({0.0, 1.0});
  ComplexMatrix f01 = ComplexMatrix::Zero(2, 2), f10 = ComplexMatrix::Zero(2, 2);
  f01(0, 1) = 1.0;
  f10(1, 0) = 1.0;
  const KrausChannel ch(2, {std::sqrt(p) * identity(2), s * e0, s * e1, s * f01, s * f10});
  ASSERT_TRUE(validate_cptp(ch).ok);
  EXPECT_LE(action_gap(ch, depolarizing(2, p), 2), 1e-12);
  const CanonicalDecomposition can = canonical(ch);
  EXPECT_NEAR(can.weights[0], 0.925, 1e-12);
  EXPECT_LE(max_abs_diff(can.kraus[0], std::sqrt(0.925) * identity(2)), 1e-10);
}

TEST(Canonical, EqualXYWeightsDegenerate) {
  const KrausChannel leading_tie(2, {std::sqrt(0.5) * pauli_x(), std::sqrt(0.5) * pauli_y()});
  EXPECT_TRUE(canonical(leading_tie).degenerate_leading);
  EXPECT_THROW(lk(leading_tie, true), Error);
  const KrausChannel ch(2, {std::sqrt(0.8) * identity(2), std::sqrt(0.1) * pauli_x(),
                            std::sqrt(0.1) * pauli_y()});
  const CanonicalDecomposition can = canonical(ch);
  EXPECT_FALSE(can.degenerate_leading);
  EXPECT_NEAR(can.weights[1], can.weights[2], 1e-12);
}

TEST(Canonical, Invariants) {
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const KrausChannel ch = random_cptp(d, 1 + t % (d * d), 1000 * d + t);
      const CanonicalDecomposition can = canonical(ch);
      double sum = 0.0;
      for (std::size_t i = 0; i < can.kraus.size(); ++i) {
        sum += can.weights[i];
        if (i > 0) EXPECT_GE(can.weights[i - 1], can.weights[i]);
        EXPECT_NEAR(can.weights[i], hs_norm_sq(can.kraus[i]) / d, 1e-12);
        for (std::size_t j = 0; j < i; ++j) {
          EXPECT_LE(std::abs(hs_inner(can.kraus[i], can.kraus[j])), 1e-9);
        }
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_LE(static_cast<int>(can.kraus.size()), d * d);
      EXPECT_LE(action_gap(ch, can.to_channel(), 7 * d + t), 1e-9);
    }
  }
}

TEST(Canonical, WeightsUnitarilyInvariant) {
  for (int d : {2, 3}) {
    const KrausChannel ch = random_cptp(d, 3, 17 + d);
    const ComplexMatrix u = random_unitary(d, std::uint64_t{99});
    auto w0 = canonical(ch).weights;
    auto w1 = canonical(premultiply(u, ch)).weights;
    auto w2 = canonical(postmultiply(ch, u)).weights;
    ASSERT_EQ(w0.size(), w1.size());
    ASSERT_EQ(w0.size(), w2.size());
    for (std::size_t i = 0; i < w0.size(); ++i) {
      EXPECT_NEAR(w0[i], w1[i], 1e-9);
      EXPECT_NEAR(w0[i], w2[i], 1e-9);
    }
  }
}

TEST(Lk, Examples) {
  std::mt19937_64 rng(4);
  const ComplexMatrix u = random_unitary(3, rng);
  const LKMap lu = lk(KrausChannel::unitary(u));
  EXPECT_NEAR(lu.weight, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(hs_inner(lu.a1, u)), 3.0, 1e-10);
  EXPECT_NEAR(trace(lu.a1).imag(), 0.0, 1e-10);

  const LKMap ld = lk(extremal_dephaser(4));
  EXPECT_LE(max_abs_diff(ld.a1, diag({0.0, 1.0, 1.0, 1.0})), 1e-12);
  EXPECT_NEAR(ld.weight, 0.75, 1e-12);
  EXPECT_FALSE(ld.catastrophic_warning);

  const LKMap la = lk(amplitude_damping(2, 0.19));
  EXPECT_LE(max_abs_diff(la.a1, diag({1.0, 0.9})), 1e-12);
  EXPECT_NEAR(la.weight, hs_norm_sq(la.a1) / 2.0, 1e-12);

  EXPECT_TRUE(lk(depolarizing(2, 0.0)).catastrophic_warning);
}

TEST(Compose, Examples) {
  const KrausChannel ii = compose({KrausChannel::identity(2), KrausChannel::identity(2)});
  EXPECT_LE(action_gap(ii, KrausChannel::identity(2), 1), 1e-12);

  const KrausChannel b = bit_flip(0.1);
  const KrausChannel bb = compose({b, b});
  EXPECT_NEAR(phi(bb, identity(2)), 0.82, 1e-12);
  const LKMap l = compose_lk({lk(b), lk(b)});
  EXPECT_NEAR(phi(KrausChannel(2, {l.a1}), identity(2)), 0.81, 1e-12);
  EXPECT_NEAR(l.weight, 0.81, 1e-12);

  const KrausChannel r = compose({rotation(2, 0.1), rotation(2, 0.2)});
  EXPECT_LE(action_gap(r, rotation(2, 0.3), 2), 1e-12);
}

TEST(Compose, OrderFirstAppliedFirst) {
  const KrausChannel a = amplitude_damping(2, 0.3);
  const KrausChannel u = rotation(2, 0.7);
  const KrausChannel au = compose(a, u);
  std::mt19937_64 rng(6);
  const ComplexMatrix rho = random_density(2, rng);
  EXPECT_LE(max_abs_diff(qpolar::apply(au, rho), qpolar::apply(u, qpolar::apply(a, rho))), 1e-12);
}

TEST(Compose, RecanonicalizesLargeFamilies) {
  KrausChannel acc = random_cptp(2, 4, 1);
  for (int i = 0; i < 6; ++i) acc = compose(acc, random_cptp(2, 4, 2 + i));
  EXPECT_LE(acc.kraus.size(), 4u);
  EXPECT_TRUE(validate_cptp(acc).ok);
}

TEST(Compose, Associative) {
  for (int d : {2, 3}) {
    const KrausChannel a = random_cptp(d, 2, 70 + d), b = random_cptp(d, 3, 80 + d),
                       c = random_cptp(d, 2, 90 + d);
    EXPECT_LE(action_gap(compose(compose(a, b), c), compose(a, compose(b, c)), 3), 1e-9);
  }
}

TEST(Compose, DimensionMismatch) {
  try {
    compose(KrausChannel::identity(2), KrausChannel::identity(3));
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Apply, Examples) {
  std::mt19937_64 rng(12);
  const ComplexMatrix rho = random_density(3, rng);
  EXPECT_LE(max_abs_diff(qpolar::apply(KrausChannel::identity(3), rho), rho), 1e-14);

  const double p = 0.9;
  const ComplexMatrix zero = diag({1.0, 0.0});
  EXPECT_LE(max_abs_diff(qpolar::apply(depolarizing(2, p), zero), diag({p + (1 - p) / 2, (1 - p) / 2})),
            1e-12);

  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  EXPECT_LE(max_abs_diff(qpolar::apply(dephasing(2, 0.5), plus), diag({0.5, 0.5})), 1e-12);
}

TEST(Apply, PreservesTrace) {
  const KrausChannel ch = random_cptp(4, 5, 8);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix rho = random_density(4, rng);
    EXPECT_NEAR(std::abs(trace(qpolar::apply(ch, rho)) - trace(rho)), 0.0, 1e-10);
  }
  EXPECT_THROW(qpolar::apply(ch, identity(2)), Error);
}

TEST(Superop, Examples) {
  EXPECT_LE(max_abs_diff(to_superop(KrausChannel::identity(3)).matrix, identity(9)), 1e-14);
  std::mt19937_64 rng(14);
  const ComplexMatrix u = random_unitary(2, rng);
  EXPECT_LE(max_abs_diff(to_superop(KrausChannel::unitary(u)).matrix, kron(u.conjugate(), u)),
            1e-14);
}

TEST(Superop, MatchesApply) {
  const KrausChannel ch = random_cptp(2, 3, 21);
  const ComplexMatrix s = to_superop(ch).matrix;
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix rho = random_density(2, rng);
    const ComplexMatrix via = unvec_col(s * vec_col(rho), 2);
    EXPECT_LE(max_abs_diff(via, qpolar::apply(ch, rho)), 1e-10);
  }
}

}  // namespace
