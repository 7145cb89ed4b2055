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

#include "qpolar/genlib.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qpolar/errors.hpp"
#include "qpolar/polar.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

namespace {

using std::numbers::pi;

struct FamilyEntry {
  Family family;
  const char* name;
};

constexpr FamilyEntry kFamilies[] = {
    {Family::Identity, "identity"},
    {Family::Depolarizing, "depolarizing"},
    {Family::Dephasing, "dephasing"},
    {Family::StochasticWeyl, "stochastic_weyl"},
    {Family::AmplitudeDamping, "amplitude_damping"},
    {Family::Rotation, "rotation"},
    {Family::RandomUnitaryError, "random_unitary_error"},
    {Family::RandomCptp, "random_cptp"},
    {Family::PsdLkDecoherent, "psd_lk_decoherent"},
    {Family::ExtremalDephaser, "extremal_dephaser"},
    {Family::ExtremalUnitary, "extremal_unitary"},
    {Family::Spiral, "spiral"},
    {Family::CoherenceMix, "coherence_mix"},
};

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::ParamOutOfRange, what);
}

void require_dim(int d, int min_d, const char* family) {
  if (d < min_d) out_of_range(std::string(family) + ": dimension too small");
}

void require_in(double x, double lo, double hi, const char* name) {
  if (!(x >= lo && x <= hi)) {
    out_of_range(std::string(name) + " = " + std::to_string(x) + " outside [" +
                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

class Params {
 public:
  Params(const FamilySpec& spec, std::set<std::string> allowed) : spec_(spec) {
    for (const auto& [k, v] : spec.params) {
      if (!allowed.count(k)) {
        out_of_range(std::string(family_name(spec.family)) + ": unknown parameter '" + k + "'");
      }
      (void)v;
    }
  }
  bool has(const std::string& k) const { return spec_.params.count(k) > 0; }
  double get(const std::string& k) const {
    auto it = spec_.params.find(k);
    if (it == spec_.params.end()) {
      out_of_range(std::string(family_name(spec_.family)) + ": missing parameter '" + k + "'");
    }
    return it->second;
  }
  double get(const std::string& k, double fallback) const { return has(k) ? get(k) : fallback; }

 private:
  const FamilySpec& spec_;
};

int as_int(double x, const char* name) {
  if (std::floor(x) != x) out_of_range(std::string(name) + " must be an integer");
  return static_cast<int>(x);
}

KrausChannel stochastic_from_weights(int d, const std::vector<double>& probs) {
  // probs indexed by a*d + b for X^a Z^b.
  std::vector<ComplexMatrix> ops;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double p = probs[static_cast<std::size_t>(a * d + b)];
      if (p > 0.0) ops.push_back(std::sqrt(p) * weyl(d, a, b));
    }
  }
  return KrausChannel(d, std::move(ops));
}

KrausChannel stochastic_weyl_family(const FamilySpec& spec) {
  const int d = spec.dim;
  require_dim(d, 2, "stochastic_weyl");
  const Params p(spec, {"p", "uniform", "px", "py", "pz"});
  std::vector<double> probs(static_cast<std::size_t>(d * d), 0.0);
  if (p.has("px") || p.has("py") || p.has("pz")) {
    if (d != 2) out_of_range("stochastic_weyl: px/py/pz need d = 2");
    const double px = p.get("px", 0.0), py = p.get("py", 0.0), pz = p.get("pz", 0.0);
    require_in(px, 0, 1, "px");
    require_in(py, 0, 1, "py");
    require_in(pz, 0, 1, "pz");
    require_in(px + py + pz, 0, 1, "px+py+pz");
    probs = {1.0 - px - py - pz, pz, px, py};  // I, Z, X, XZ
    return stochastic_from_weights(d, probs);
  }
  const double perr = p.get("p");
  require_in(perr, 0, 1, "p");
  const bool uniform = p.get("uniform", 0.0) != 0.0;
  std::vector<double> w(static_cast<std::size_t>(d * d - 1), 1.0);
  if (!uniform) {
    std::mt19937_64 rng(spec.seed);
    std::exponential_distribution<double> ex(1.0);
    for (auto& x : w) x = ex(rng);
  }
  double total = 0.0;
  for (double x : w) total += x;
  probs[0] = 1.0 - perr;
  for (std::size_t i = 1; i < probs.size(); ++i) probs[i] = perr * w[i - 1] / total;
  return stochastic_from_weights(d, probs);
}

}  // namespace

const char* family_name(Family f) {
  for (const auto& e : kFamilies) {
    if (e.family == f) return e.name;
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (const auto& e : kFamilies) {
    if (name == e.name) return e.family;
  }
  out_of_range("unknown channel family '" + name + "'");
}

ComplexMatrix weyl(int d, int a, int b) {
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * pi * static_cast<double>((b * j) % d) / d;
    w((j + a) % d, j) = std::polar(1.0, angle);
  }
  return w;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix rotation_matrix(int d, double theta) {
  require_dim(d, 2, "rotation");
  ComplexMatrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  if (d == 2) return r;
  if (d % 2 == 0) return kron(r, identity(d / 2));
  ComplexMatrix out = identity(d);
  out.topLeftCorner(2, 2) = r;
  return out;
}

KrausChannel depolarizing(int d, double p) {
  require_dim(d, 1, "depolarizing");
  require_in(p, 0, 1, "p");
  const double d2 = static_cast<double>(d) * d;
  std::vector<double> probs(static_cast<std::size_t>(d * d), (1.0 - p) / d2);
  probs[0] = p + (1.0 - p) / d2;
  return stochastic_from_weights(d, probs);
}

KrausChannel dephasing(int d, double q) {
  require_dim(d, 2, "dephasing");
  require_in(q, 0, 0.5, "q");
  std::vector<ComplexMatrix> ops{std::sqrt(1.0 - q) * identity(d)};
  if (q > 0.0) {
    for (int b = 1; b < d; ++b) ops.push_back(std::sqrt(q / (d - 1)) * weyl(d, 0, b));
  }
  return KrausChannel(d, std::move(ops));
}

KrausChannel amplitude_damping(int d, double gamma) {
  require_dim(d, 2, "amplitude_damping");
  require_in(gamma, 0, 1, "gamma");
  ComplexMatrix a0 = identity(d) * std::sqrt(1.0 - gamma);
  a0(0, 0) = 1.0;
  std::vector<ComplexMatrix> ops{a0};
  if (gamma > 0.0) {
    for (int i = 1; i < d; ++i) {
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(0, i) = std::sqrt(gamma);
      ops.push_back(a);
    }
  }
  return KrausChannel(d, std::move(ops));
}

KrausChannel rotation(int d, double theta) {
  if (!(theta > -pi && theta <= pi)) out_of_range("theta outside (-pi, pi]");
  return KrausChannel::unitary(rotation_matrix(d, theta));
}

KrausChannel extremal_dephaser(int d) {
  require_dim(d, 2, "extremal_dephaser");
  ComplexMatrix a1 = identity(d);
  a1(0, 0) = 0.0;
  ComplexMatrix a2 = ComplexMatrix::Zero(d, d);
  a2(0, 0) = 1.0;
  return KrausChannel(d, {a1, a2});
}

KrausChannel extremal_unitary(int d) {
  require_dim(d, 2, "extremal_unitary");
  ComplexMatrix v = identity(d);
  v(0, 0) = -1.0;
  return KrausChannel::unitary(v);
}

KrausChannel spiral(double alpha) {
  const double a3 = alpha * alpha * alpha;
  ComplexMatrix a1 = ComplexMatrix::Zero(3, 3);
  ComplexMatrix a2 = ComplexMatrix::Zero(3, 3);
  a1(0, 0) = std::cos(alpha);
  a1(1, 1) = std::cos(alpha / 2) * std::polar(1.0, a3 / 2);
  a1(2, 2) = std::cos(alpha / 2) * std::polar(1.0, -a3 / 2);
  a2(0, 0) = std::sin(alpha);
  a2(1, 1) = -std::sin(alpha / 2) * std::polar(1.0, alpha + a3 / 2);
  a2(2, 2) = -std::sin(alpha / 2) * std::polar(1.0, -(alpha + a3 / 2));
  return KrausChannel(3, {a1, a2});
}

KrausChannel dephaser_from_sigma(const std::vector<double>& sigma) {
  const int d = static_cast<int>(sigma.size());
  require_dim(d, 2, "dephaser_from_sigma");
  ComplexMatrix a1 = ComplexMatrix::Zero(d, d);
  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  bool has_complement = false;
  for (int i = 0; i < d; ++i) {
    const double s = sigma[static_cast<std::size_t>(i)];
    require_in(s, 0, 1, "sigma");
    a1(i, i) = s;
    c(i, i) = std::sqrt(1.0 - s * s);
    has_complement = has_complement || s < 1.0;
  }
  if (!has_complement) return KrausChannel(d, {a1});
  return KrausChannel(d, {a1, matmul(weyl(d, 1, 0), c)});
}

KrausChannel random_extremal_dephaser(int d, int outliers, double outlier_deviation,
                                      double mean_deviation, std::uint64_t seed) {
  require_dim(d, 2, "extremal_dephaser");
  if (outliers < 1 || outliers >= d) out_of_range("outliers must be in [1, d-1]");
  require_in(outlier_deviation, 0, 1, "outlier_deviation");
  require_in(mean_deviation, 0, 0.5, "mean_deviation");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> sigma(static_cast<std::size_t>(d));
  for (auto& s : sigma) s = 1.0 - 2.0 * mean_deviation * unit(rng);
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int k = 0; k < outliers; ++k) {
    sigma[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] =
        1.0 - outlier_deviation * (1.0 + 0.1 * unit(rng));
  }
  for (auto& s : sigma) s = std::clamp(s, 0.0, 1.0);
  return dephaser_from_sigma(sigma);
}

CoherenceMix coherence_mix(double r, double level) {
  const int d = 2;
  if (!(r > 0.0 && r < 0.5)) out_of_range("coherence_mix: r outside (0, 1/2)");
  require_in(level, 0, 1, "level");
  const double scale = (d + 1.0) / d;
  const double cos2 = 1.0 - level * r * scale;
  const double keep = (1.0 - r * scale) / cos2;
  CoherenceMix out;
  out.q = 1.0 - keep;
  if (out.q < 0.0 && out.q > -1e-15) out.q = 0.0;
  require_in(out.q, 0, 0.5, "coherence_mix: derived dephasing q");
  out.theta = std::acos(std::sqrt(cos2));
  out.channel = premultiply(rotation_matrix(d, out.theta), dephasing(d, out.q));
  return out;
}

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_unit_hermitian(int d, std::mt19937_64& rng) {
  ComplexMatrix h = random_hermitian(d, rng);
  const HermitianEig eig = hermitian_eig(h);
  const double n = std::max(std::abs(eig.values(0)), std::abs(eig.values(d - 1)));
  return n > 0.0 ? ComplexMatrix(h / n) : h;
}

ComplexMatrix random_contraction(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(g), Eigen::ComputeFullU | Eigen::ComputeFullV);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd s(d);
  for (int i = 0; i < d; ++i) s(i) = unit(rng) < 0.25 ? 1.0 : unit(rng);
  return svd.matrixU() * s.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double m = std::abs(rjj);
    if (m > 0.0) q.col(j) *= rjj / m;
  }
  return q;
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(d, rng);
}

ComplexMatrix random_near_identity_unitary(int d, double strength, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix h = random_unit_hermitian(d, rng);
  return expm_hermitian(h, cplx(0.0, -strength));
}

KrausChannel random_cptp(int d, int kraus_rank, std::uint64_t seed) {
  require_dim(d, 1, "random_cptp");
  if (kraus_rank < 1 || kraus_rank > d * d) out_of_range("kraus_rank outside [1, d^2]");
  std::mt19937_64 rng(seed);
  const int n = d * kraus_rank;
  const Eigen::MatrixXcd g = gaussian_matrix(n, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, d);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double m = std::abs(rjj);
    if (m > 0.0) q.col(j) *= rjj / m;
  }
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < kraus_rank; ++k) ops.push_back(q.block(k * d, 0, d, d));
  return KrausChannel(d, std::move(ops));
}

KrausChannel random_cptp_near_identity(int d, int kraus_rank, double epsilon,
                                       std::uint64_t seed) {
  require_dim(d, 1, "random_cptp");
  if (kraus_rank < 1 || kraus_rank > d * d) out_of_range("kraus_rank outside [1, d^2]");
  if (!(epsilon > 0.0 && epsilon <= pi)) out_of_range("epsilon outside (0, pi]");
  const ComplexMatrix u = random_near_identity_unitary(d * kraus_rank, epsilon, seed);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < kraus_rank; ++k) ops.push_back(u.block(k * d, 0, d, d));
  return KrausChannel(d, std::move(ops));
}

KrausChannel psd_lk_decoherent(int d, double strength, std::uint64_t seed) {
  if (!(strength > 0.0 && strength <= 0.3)) out_of_range("strength outside (0, 0.3]");
  require_dim(d, 2, "psd_lk_decoherent");
  std::mt19937_64 rng(seed);
  const int rank = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(d * d - 1));
  const KrausChannel a = random_cptp_near_identity(d, rank, strength, derive_seed(seed, 1));
  return channel_polar(a).decoherent_left;
}

KrausChannel make_channel(const FamilySpec& spec) {
  const int d = spec.dim;
  switch (spec.family) {
    case Family::Identity: {
      Params p(spec, {});
      require_dim(d, 1, "identity");
      return KrausChannel::identity(d);
    }
    case Family::Depolarizing: {
      Params p(spec, {"p"});
      return depolarizing(d, p.get("p"));
    }
    case Family::Dephasing: {
      Params p(spec, {"q"});
      return dephasing(d, p.get("q"));
    }
    case Family::StochasticWeyl:
      return stochastic_weyl_family(spec);
    case Family::AmplitudeDamping: {
      Params p(spec, {"gamma"});
      return amplitude_damping(d, p.get("gamma"));
    }
    case Family::Rotation: {
      Params p(spec, {"theta"});
      return rotation(d, p.get("theta"));
    }
    case Family::RandomUnitaryError: {
      Params p(spec, {"strength"});
      const double s = p.get("strength");
      require_in(s, 0, pi, "strength");
      require_dim(d, 1, "random_unitary_error");
      return KrausChannel::unitary(random_near_identity_unitary(d, s, spec.seed));
    }
    case Family::RandomCptp: {
      Params p(spec, {"kraus_rank", "epsilon"});
      const int rank = as_int(p.get("kraus_rank"), "kraus_rank");
      if (p.has("epsilon")) return random_cptp_near_identity(d, rank, p.get("epsilon"), spec.seed);
      return random_cptp(d, rank, spec.seed);
    }
    case Family::PsdLkDecoherent: {
      Params p(spec, {"strength"});
      return psd_lk_decoherent(d, p.get("strength"), spec.seed);
    }
    case Family::ExtremalDephaser: {
      Params p(spec, {"random", "outliers", "outlier_deviation", "mean_deviation"});
      if (p.get("random", 0.0) == 0.0) return extremal_dephaser(d);
      return random_extremal_dephaser(d, as_int(p.get("outliers", 1.0), "outliers"),
                                      p.get("outlier_deviation", 4e-3),
                                      p.get("mean_deviation", 5e-5), spec.seed);
    }
    case Family::ExtremalUnitary: {
      Params p(spec, {});
      return extremal_unitary(d);
    }
    case Family::Spiral: {
      Params p(spec, {"alpha"});
      if (d != 3) out_of_range("spiral is defined for d = 3");
      return spiral(p.get("alpha"));
    }
    case Family::CoherenceMix: {
      Params p(spec, {"r", "level"});
      if (d != 2) out_of_range("coherence_mix is defined for d = 2");
      return coherence_mix(p.get("r"), p.get("level")).channel;
    }
  }
  out_of_range("unhandled family");
}

}  // namespace qpolar
