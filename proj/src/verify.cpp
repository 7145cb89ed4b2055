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

#include "qpolar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qpolar/errors.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/metrics.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Make>
KrausChannel scale_to_infidelity(int d, double max_infidelity, double start, double cap,
                                 std::uint64_t seed, Make make) {
  if (!(max_infidelity > 0.0)) throw Error(ErrorCode::ParamOutOfRange, "max_infidelity <= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  const double target = max_infidelity * frac(rng);
  const std::uint64_t inner = derive_seed(seed, 1);
  double eps = std::min(start, cap);
  KrausChannel ch = make(eps, inner);
  for (int iter = 0; iter < 60; ++iter) {
    const double r = infidelity(phi(ch, identity(d)), d);
    if (r <= target) return ch;
    eps *= std::min(0.95, 0.97 * std::sqrt(target / r));
    ch = make(eps, inner);
  }
  return ch;
}

std::string case_id(const std::string& suite, int d, int m, int t) {
  std::string id = suite + "-d" + std::to_string(d);
  if (m > 0) id += "-m" + std::to_string(m);
  return id + "-t" + std::to_string(t);
}

class Collector {
 public:
  explicit Collector(VerifyResult& out) : out_(out) {}
  void add(const std::string& id, BoundReport r) {
    if (!r.applicable) ++out_.inapplicable;
    if (!r.holds) ++out_.violations;
    out_.cases.push_back({id, std::move(r)});
  }

 private:
  VerifyResult& out_;
};

BoundReport from_inequality(const std::string& name, const InequalityCheck& c, bool lower) {
  // lower: lhs >= rhs; otherwise lhs <= rhs.
  BoundReport r = lower ? make_report(name, c.lhs, c.rhs, kInf, {})
                        : make_report(name, c.lhs, -kInf, c.rhs, {});
  r.holds = c.holds;
  return r;
}

void run_lemmas(const VerifyOptions& o, const std::vector<int>& dims, Collector& col) {
  const std::uint64_t suite_seed = derive_seed(o.seed, 1);
  for (int d : dims) {
    const std::uint64_t dseed = derive_seed(suite_seed, static_cast<std::uint64_t>(d));
    for (int t = 0; t < o.trials; ++t) {
      const NoisyGate g = random_non_catastrophic(d, derive_seed(dseed, static_cast<std::uint64_t>(t)));
      auto [uni, fid] = lk_gap_bounds(g.channel, g.target);
      const std::string id = case_id("lemmas", d, 0, t);
      col.add(id, std::move(uni));
      col.add(id, std::move(fid));
    }
  }
}

void run_appendix(const VerifyOptions& o, const std::vector<int>& dims, Collector& col) {
  const std::uint64_t suite_seed = derive_seed(o.seed, 3);
  for (int d : dims) {
    const std::uint64_t dseed = derive_seed(suite_seed, static_cast<std::uint64_t>(d));
    for (int t = 0; t < o.trials; ++t) {
      std::mt19937_64 rng(derive_seed(dseed, static_cast<std::uint64_t>(t)));
      const std::string id = case_id("appendix", d, 0, t);
      ComplexMatrix ha = random_hermitian(d, rng);
      ComplexMatrix hb = random_hermitian(d, rng);
      if (t % 2 == 1) {
        ha = matmul(ha, ha);
        hb = matmul(hb, hb);
      }
      col.add(id, from_inequality("trace_inequality", check_trace_inequality(ha, hb), true));
      const ComplexMatrix ga = gaussian_matrix(d, d, rng);
      const ComplexMatrix gb = t % 2 == 0 ? gaussian_matrix(d, d, rng) : random_contraction(d, rng);
      col.add(id, from_inequality("vn_trace_inequality", check_vn_inequality(ga, gb), false));
      const ComplexMatrix ca = random_contraction(d, rng);
      const ComplexMatrix cb = random_contraction(d, rng);
      const NormSandwich s = check_norm_inequality(ca, cb);
      BoundReport r = make_report("norm_inequality", s.middle, s.lower, s.upper, {});
      r.holds = s.holds;
      col.add(id, std::move(r));
    }
  }
}

template <typename F>
void guarded(Collector& col, const std::string& id, const std::string& name, F f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotNonCatastrophic) throw;
    col.add(id, inapplicable_report(name, e.what()));
  }
}

void run_theorems(const VerifyOptions& o, const std::vector<int>& dims, Collector& col) {
  const std::uint64_t suite_seed = derive_seed(o.seed, 2);
  for (int d : dims) {
    const std::uint64_t dseed = derive_seed(suite_seed, static_cast<std::uint64_t>(d));
    for (int m : o.depths) {
      const std::uint64_t mseed = derive_seed(dseed, static_cast<std::uint64_t>(m));
      const double cap = sweep_infidelity_cap(m);
      for (int t = 0; t < o.trials; ++t) {
        const std::uint64_t s = derive_seed(mseed, static_cast<std::uint64_t>(t));
        const std::string id = case_id("theorems", d, m, t);
        const CircuitSpec circuit = random_circuit(d, m, cap, derive_seed(s, 1));
        guarded(col, id, "unitarity_evolution", [&] { col.add(id, unitarity_evolution(circuit)); });
        guarded(col, id, "fidelity_evolution", [&] { col.add(id, fidelity_evolution(circuit)); });
        guarded(col, id, "unitarity_decay", [&] {
          UnitarityDecay u = unitarity_decay(circuit);
          col.add(id, std::move(u.decay));
          col.add(id, std::move(u.monotonicity));
          col.add(id, std::move(u.subadditivity));
        });
        guarded(col, id, "max_correction_multi",
                [&] { col.add(id, max_correction_multi(circuit)); });

        const CircuitSpec dec = random_decoherent_circuit(d, m, cap, derive_seed(s, 2));
        std::mt19937_64 rng(derive_seed(s, 3));
        std::uniform_real_distribution<double> frac(0.1, 1.0);
        const double strength = std::sqrt(cap) * frac(rng);
        const ComplexMatrix v = random_near_identity_unitary(d, strength, derive_seed(s, 4));
        guarded(col, id, "fidelity_decay", [&] { col.add(id, fidelity_decay(dec)); });
        guarded(col, id, "decoherent_features", [&] {
          DecoherentFeatures f = decoherent_features(dec, v);
          col.add(id, std::move(f.monotonicity));
          col.add(id, std::move(f.subadditivity));
        });
        guarded(col, id, "equable_composition",
                [&] { col.add(id, equable_composition(v, dec)); });
        if (d <= 8) {
          const NoisyGate g = random_non_catastrophic(d, derive_seed(s, 5));
          guarded(col, id, "max_correction", [&] {
            col.add(id, max_correction(g.channel, g.target, o.optimizer_budget,
                                            derive_seed(s, 6)));
          });
        }
      }
    }
  }
}

}  // namespace

KrausChannel random_small_error(int d, double max_infidelity, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0));
  const int max_rank = std::min(d * d, 16);
  const int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_rank));
  return scale_to_infidelity(d, max_infidelity, 1.0, 1.0, seed,
                             [&](double eps, std::uint64_t s) {
                               return random_cptp_near_identity(d, rank, eps, s);
                             });
}

KrausChannel random_small_decoherent(int d, double max_infidelity, std::uint64_t seed) {
  return scale_to_infidelity(d, max_infidelity, 0.3, 0.3, seed,
                             [&](double eps, std::uint64_t s) {
                               return psd_lk_decoherent(d, eps, s);
                             });
}

NoisyGate random_noisy_gate(int d, double max_infidelity, std::uint64_t seed) {
  NoisyGate g;
  g.target = random_unitary(d, derive_seed(seed, 7));
  g.channel = premultiply(g.target, random_small_error(d, max_infidelity, seed));
  return g;
}

NoisyGate random_non_catastrophic(int d, std::uint64_t seed) {
  const double max_r = 0.45 * d / (d + 1.0);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = derive_seed(seed, 100 + attempt);
    std::mt19937_64 rng(s);
    const double r = max_r * std::pow(10.0, -3.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    NoisyGate g = random_noisy_gate(d, r, s);
    if (non_catastrophic(g.channel, g.target)) return g;
  }
}

CircuitSpec random_circuit(int d, int depth, double max_infidelity, std::uint64_t seed) {
  CircuitSpec c;
  for (int i = 0; i < depth; ++i) {
    NoisyGate g = random_noisy_gate(d, max_infidelity, derive_seed(seed, static_cast<std::uint64_t>(i)));
    c.channels.push_back(std::move(g.channel));
    c.targets.push_back(std::move(g.target));
  }
  return c;
}

CircuitSpec random_decoherent_circuit(int d, int depth, double max_infidelity,
                                      std::uint64_t seed) {
  CircuitSpec c;
  for (int i = 0; i < depth; ++i) {
    c.channels.push_back(
        random_small_decoherent(d, max_infidelity, derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return c;
}

double sweep_infidelity_cap(int depth) { return std::min(1e-2, 0.2 / depth); }

std::vector<int> default_dims(const std::string& suite) {
  if (suite == "lemmas") return {2, 3, 4, 8};
  if (suite == "theorems") return {2, 3};
  if (suite == "appendix") return {2, 3, 5};
  return {2, 3};
}

VerifyResult run_verify(const VerifyOptions& opts) {
  if (opts.trials < 1) throw Error(ErrorCode::ParamOutOfRange, "verify: trials must be >= 1");
  const std::string& s = opts.suite;
  if (s != "lemmas" && s != "theorems" && s != "appendix" && s != "all") {
    throw Error(ErrorCode::ParamOutOfRange, "verify: unknown suite '" + s + "'");
  }
  VerifyResult out;
  Collector col(out);
  auto dims_for = [&](const std::string& suite) {
    return opts.dims.empty() ? default_dims(suite) : opts.dims;
  };
  if (s == "lemmas" || s == "all") run_lemmas(opts, dims_for("lemmas"), col);
  if (s == "theorems" || s == "all") run_theorems(opts, dims_for("theorems"), col);
  if (s == "appendix" || s == "all") run_appendix(opts, dims_for("appendix"), col);
  return out;
}

}  // namespace qpolar
