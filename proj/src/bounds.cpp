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

#include "qpolar/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qpolar/errors.hpp"
#include "qpolar/metrics.hpp"
#include "qpolar/optimize.hpp"
#include "qpolar/polar.hpp"

namespace qpolar {

int CircuitSpec::dim() const {
  if (channels.empty()) throw Error(ErrorCode::DimensionMismatch, "circuit: no channels");
  return channels.front().dim;
}

ComplexMatrix CircuitSpec::target(std::size_t i) const {
  if (targets.empty()) return identity(dim());
  return targets.at(i);
}

ComplexMatrix CircuitSpec::composed_target() const {
  ComplexMatrix u = identity(dim());
  for (std::size_t i = 0; i < depth(); ++i) u = matmul(target(i), u);
  return u;
}

namespace {

void validate_circuit(const CircuitSpec& c) {
  if (c.channels.empty()) throw Error(ErrorCode::DimensionMismatch, "circuit: no channels");
  const int d = c.dim();
  for (const auto& ch : c.channels) {
    if (ch.dim != d) throw Error(ErrorCode::DimensionMismatch, "circuit: dimensions differ");
  }
  if (!c.targets.empty()) {
    if (c.targets.size() != c.channels.size()) {
      throw Error(ErrorCode::DimensionMismatch, "circuit: targets and channels differ in length");
    }
    for (const auto& u : c.targets) require_unitary_target(u, d);
  }
}

double sq(double x) { return x * x; }

// |tr(a) / d|^2
double trace_fidelity(const ComplexMatrix& a) {
  return std::norm(trace(a)) / sq(static_cast<double>(a.rows()));
}

struct CircuitEval {
  std::vector<ElementStats> elements;
  KrausChannel composed;
  ComplexMatrix lk_product;  // A1_m ... A1_1
  ComplexMatrix target;      // U_m ... U_1
  double phi = 0.0;
  double upsilon = 0.0;
};

CircuitEval evaluate(const CircuitSpec& c, bool require_nc) {
  validate_circuit(c);
  CircuitEval e;
  e.target = c.composed_target();
  e.lk_product = identity(c.dim());
  for (std::size_t i = 0; i < c.depth(); ++i) {
    e.elements.push_back(element_stats(c.channels[i], c.target(i)));
    const ElementStats& s = e.elements.back();
    if (require_nc && !non_catastrophic(s.phi, s.upsilon)) {
      throw Error(ErrorCode::NotNonCatastrophic,
                  "circuit element " + std::to_string(i) + " is catastrophic");
    }
    e.lk_product = matmul(s.a1, e.lk_product);
  }
  e.composed = compose(c.channels);
  e.phi = phi(e.composed, e.target);
  e.upsilon = upsilon(e.composed);
  if (require_nc && !non_catastrophic(e.phi, e.upsilon)) {
    throw Error(ErrorCode::NotNonCatastrophic, "circuit composition is catastrophic");
  }
  return e;
}

void require_decoherent(const CircuitSpec& c) {
  for (std::size_t i = 0; i < c.depth(); ++i) {
    if (!is_decoherent(c.channels[i])) {
      throw Error(ErrorCode::NotDecoherent, "circuit element " + std::to_string(i) +
                                                " has a leading Kraus operator that is not PSD");
    }
  }
}

CircuitSpec with_identity_targets(const CircuitSpec& c) {
  CircuitSpec out;
  out.channels = c.channels;
  return out;
}

struct Sums {
  double s_star = 0.0;     // sum (1 - w1)
  double s_star_sq = 0.0;  // sum (1 - w1)^2
  double sx = 0.0;         // sum (1 - E sigma)
  double sx_sq = 0.0;      // sum (1 - E sigma)^2
  double prod_sigma = 1.0;  // prod E sigma
  double prod_upsilon = 1.0;
  double prod_phi = 1.0;
  double weight_fid = 0.0;  // sum (1 - w1)(1 - phi)
  double gamma = 0.0;       // max gamma_decoh
};

Sums sums_of(const std::vector<ElementStats>& el) {
  Sums s;
  for (const auto& e : el) {
    const double x = 1.0 - e.mean_sigma;
    s.s_star += 1.0 - e.w1;
    s.s_star_sq += sq(1.0 - e.w1);
    s.sx += x;
    s.sx_sq += x * x;
    s.prod_sigma *= e.mean_sigma;
    s.prod_upsilon *= e.upsilon;
    s.prod_phi *= e.phi;
    s.weight_fid += (1.0 - e.w1) * (1.0 - e.phi);
    s.gamma = std::max(s.gamma, e.gamma_decoh);
  }
  return s;
}

}  // namespace

ElementStats element_stats(const KrausChannel& ch, const ComplexMatrix& target) {
  const CanonicalDecomposition can = canonical(ch);
  ElementStats s;
  s.a1 = can.kraus.front();
  s.w1 = can.weights.front();
  s.upsilon = upsilon_from_weights(can.weights);
  s.phi = phi(ch, target);
  const MatrixPolar pol = polar_decompose(s.a1);
  s.v = pol.unitary;
  s.mean_sigma = pol.singular_values.sum() / ch.dim;
  const EquabilityReport eq = equability_of_lk(s.a1);
  s.gamma_decoh = eq.gamma_decoh;
  s.gamma_coh = eq.gamma_coh;
  return s;
}

BoundReport unitarity_evolution(const CircuitSpec& circuit) {
  const CircuitEval e = evaluate(circuit, true);
  const int d = circuit.dim();
  const double w_star = hs_norm_sq(e.lk_product) / d;
  const double observed = sq(e.upsilon) - sq(w_star);
  const double upper = sq(1.0 - w_star);
  const double loose = sq(1.0 - sq(e.upsilon));
  return make_report("unitarity_evolution", observed, 0.0, upper,
                     {{"lk_composed_upsilon", w_star},
                      {"upsilon_sq_composed", sq(e.upsilon)},
                      {"lk_gap_sq", upper},
                      {"loose_upper", loose}});
}

BoundReport fidelity_evolution(const CircuitSpec& circuit) {
  const CircuitEval e = evaluate(circuit, true);
  const int d = circuit.dim();
  const double phi_star = trace_fidelity(matmul(adjoint(e.target), e.lk_product));
  const Sums s = sums_of(e.elements);
  double s2 = 0.0;
  for (const auto& el : e.elements) s2 += 1.0 - sq(el.upsilon);
  (void)d;
  const double star_quad = 0.5 * sq(s.s_star);
  const double star_cross = (1.0 - phi_star) * s.s_star;
  const double star_form = star_quad + star_cross;
  const double free_quad = 0.5 * sq(s2);
  const double free_lin = (1.0 - e.phi) * s2;
  const double free_cubic = 0.5 * s2 * s2 * s2;
  const double free_cross = (1.0 - phi_star) * sq(s2);
  const double free_form = free_quad + free_lin + free_cubic + free_cross;
  BoundReport r = make_report("fidelity_evolution", e.phi - phi_star, 0.0,
                              std::min(star_form, free_form),
                              {{"phi_composed", e.phi},
                               {"phi_lk_composed", phi_star},
                               {"star_quadratic", star_quad},
                               {"star_cross", star_cross},
                               {"star_form", star_form},
                               {"free_quadratic", free_quad},
                               {"free_linear", free_lin},
                               {"free_cubic", free_cubic},
                               {"free_cross", free_cross},
                               {"free_form", free_form}});
  return r;
}

DecoherentFeatures decoherent_features(const CircuitSpec& decoherent_circuit,
                                            const ComplexMatrix& v) {
  const CircuitSpec c = with_identity_targets(decoherent_circuit);
  validate_circuit(c);
  require_unitary_target(v, c.dim());
  require_decoherent(c);
  const CircuitEval e = evaluate(c, false);
  const Sums s = sums_of(e.elements);
  const double phi_vd = phi(e.composed, adjoint(v));
  const double phi_v = trace_fidelity(v);
  const double phi_v_star = trace_fidelity(matmul(v, e.lk_product));
  double min_phi = 1.0;
  double lk_fid_sq = 0.0;
  double fid_unitarity = 0.0;
  for (const auto& el : e.elements) {
    min_phi = std::min(min_phi, el.phi);
    lk_fid_sq += sq(1.0 - sq(el.mean_sigma));
    fid_unitarity += (1.0 - el.phi) * (1.0 - sq(el.upsilon));
  }
  DecoherentFeatures out;
  const double quad = 0.5 * sq(s.s_star);
  const double cross = (1.0 - phi_v_star) * s.s_star;
  out.monotonicity = make_report("decoherent_quasi_monotonicity", phi_vd, 0.0,
                                 min_phi + quad + cross,
                                 {{"min_phi", min_phi},
                                  {"lk_quadratic", quad},
                                  {"lk_cross", cross},
                                  {"phi_lk_composed", phi_v_star}});
  double element_infid = 0.0;
  for (const auto& el : e.elements) element_infid += 1.0 - el.phi;
  const double v_sq = sq(1.0 - phi_v);
  out.subadditivity = make_report(
      "decoherent_quasi_subadditivity", 1.0 - phi_vd, 0.0,
      (1.0 - phi_v) + element_infid + v_sq + lk_fid_sq + fid_unitarity,
      {{"unitary_infidelity", 1.0 - phi_v},
       {"element_infidelity", element_infid},
       {"unitary_infidelity_sq", v_sq},
       {"lk_infidelity_sq", lk_fid_sq},
       {"infidelity_nonunitarity", fid_unitarity}});
  return out;
}

UnitarityDecay unitarity_decay(const CircuitSpec& circuit,
                                    std::optional<double> gamma_decoh_cap) {
  const CircuitEval e = evaluate(circuit, true);
  const int d = circuit.dim();
  const Sums s = sums_of(e.elements);
  UnitarityDecay out;
  double g = s.gamma;
  if (gamma_decoh_cap) {
    out.hypothesis_ok = s.gamma <= *gamma_decoh_cap + 1e-12;
    g = *gamma_decoh_cap;
  }
  const double w_star = hs_norm_sq(e.lk_product) / d;
  const double t_comp = sq(1.0 - w_star);
  const double t_elem = s.s_star_sq;
  const double t_spread = sq(g) * s.sx_sq;
  const double t_cross = 2.0 * sq(g) * sq(s.sx);
  out.decay = make_report("unitarity_decay", std::abs(e.upsilon - s.prod_upsilon), 0.0,
                          t_comp + t_elem + t_spread + t_cross,
                          {{"upsilon_composed", e.upsilon},
                           {"prod_upsilon", s.prod_upsilon},
                           {"gamma_decoh", g},
                           {"composed_lk_gap", t_comp},
                           {"element_lk_gap", t_elem},
                           {"spread", t_spread},
                           {"spread_cross", t_cross}},
                          true);
  if (!out.hypothesis_ok) out.decay.note = "measured gamma_decoh exceeds the cap";
  double min_up = 1.0;
  double sub = 0.0;
  for (const auto& el : e.elements) {
    min_up = std::min(min_up, el.upsilon);
    sub += (1.0 - el.upsilon) + sq(1.0 - sq(el.upsilon));
  }
  const double mono_extra = sq(1.0 - sq(e.upsilon)) / std::numbers::sqrt2;
  out.monotonicity = make_report("unitarity_quasi_monotonicity", e.upsilon, 0.0, min_up + mono_extra,
                                 {{"min_upsilon", min_up}, {"composed_gap", mono_extra}});
  out.subadditivity = make_report("unitarity_quasi_subadditivity", 1.0 - e.upsilon, 0.0, sub,
                                  {{"element_sum", sub}});
  return out;
}

BoundReport fidelity_decay(const CircuitSpec& decoherent_circuit) {
  const CircuitSpec c = with_identity_targets(decoherent_circuit);
  validate_circuit(c);
  require_decoherent(c);
  const CircuitEval e = evaluate(c, true);
  const Sums s = sums_of(e.elements);
  const double phi_star = trace_fidelity(e.lk_product);
  const double g2 = sq(s.gamma);
  const double t_quad = 0.5 * sq(s.s_star);
  const double t_cross = (1.0 - phi_star) * s.s_star;
  const double t_wf = s.weight_fid;
  const double t_spread = g2 * s.prod_sigma * sq(s.sx);
  const double t_quartic = 0.25 * g2 * g2 * std::pow(s.sx, 4);
  return make_report("fidelity_decay", std::abs(e.phi - s.prod_phi), 0.0,
                     t_quad + t_cross + t_wf + t_spread + t_quartic,
                     {{"phi_composed", e.phi},
                      {"prod_phi", s.prod_phi},
                      {"gamma_decoh", s.gamma},
                      {"lk_quadratic", t_quad},
                      {"lk_cross", t_cross},
                      {"weight_fidelity", t_wf},
                      {"spread", t_spread},
                      {"spread_quartic", t_quartic}},
                     true);
}

BoundReport max_correction(const KrausChannel& ch, const ComplexMatrix& target,
                                int optimizer_budget, std::uint64_t seed) {
  require_unitary_target(target, ch.dim);
  const ElementStats s = element_stats(ch, target);
  if (!non_catastrophic(s.phi, s.upsilon)) {
    throw Error(ErrorCode::NotNonCatastrophic, "max_correction: channel is catastrophic");
  }
  // Phi(U V^dagger o A, U) = sum |<V, A_k>|^2 / d^2
  const double observed = phi(ch, s.v);
  const double u = s.upsilon;
  const double gap = sq(1.0 - u * u);
  const double upper = u + 1.5 * gap;
  const double lower_basic = u * u - gap;
  const double lower_wse = u - (1.0 + sq(s.gamma_decoh)) * gap;
  const double lower = std::max(lower_basic, lower_wse);
  std::vector<Term> terms{{"upsilon", u},
                          {"gamma_decoh", s.gamma_decoh},
                          {"lower_basic", lower_basic},
                          {"lower_wse", lower_wse}};
  bool optimizer_ok = true;
  if (optimizer_budget > 0 && ch.dim <= 8) {
    const CorrectionResult opt = optimize_unitary_correction(ch, target, optimizer_budget, seed);
    terms.push_back({"optimizer_phi", opt.phi_achieved});
    terms.push_back({"optimizer_improvement", opt.phi_achieved - observed});
    terms.push_back({"optimizer_evaluations", static_cast<double>(opt.evaluations)});
    optimizer_ok = opt.phi_achieved <= upper + 1e-9;
  }
  BoundReport r = make_report("max_correction", observed, lower, upper, std::move(terms));
  if (!optimizer_ok) {
    r.holds = false;
    r.note = "optimizer exceeded the upper bound";
  }
  return r;
}

BoundReport equable_band(const EquableBandInput& in) {
  const Sums s = sums_of(in.elements);
  const double gd = s.gamma;
  const double gc = in.gamma_coh;
  const double g2 = gd * gd;
  const double t_quad = 0.5 * sq(s.s_star);
  const double t_cross = (1.0 - in.phi_lk_composed) * s.s_star;
  const double t_wf = s.weight_fid;
  const double t_coh = 2.0 * gd * gc * (1.0 - std::sqrt(in.phi_v)) * s.sx;
  const double t_spread = g2 * sq(s.sx);
  const double t_imag = (1.0 - in.phi_v) * (g2 * s.prod_sigma * sq(s.sx) +
                                            0.25 * g2 * g2 * std::pow(s.sx, 4) +
                                            g2 * s.sx_sq + 2.0 * g2 * sq(s.sx));
  const double center = in.phi_v * s.prod_phi;
  const double width = t_quad + t_cross + t_wf + t_coh + t_spread + t_imag;
  BoundReport r = make_report("equable_composition", std::abs(in.phi_composed - center),
                              0.0, width,
                              {{"phi_composed", in.phi_composed},
                               {"center", center},
                               {"phi_v", in.phi_v},
                               {"prod_phi", s.prod_phi},
                               {"gamma_decoh", gd},
                               {"gamma_coh", gc},
                               {"lk_quadratic", t_quad},
                               {"lk_cross", t_cross},
                               {"weight_fidelity", t_wf},
                               {"coherent_cross", t_coh},
                               {"spread", t_spread},
                               {"imaginary", t_imag}},
                              true);
  return r;
}

BoundReport equable_composition(const ComplexMatrix& v,
                                     const CircuitSpec& decoherent_circuit) {
  const CircuitSpec c = with_identity_targets(decoherent_circuit);
  validate_circuit(c);
  require_unitary_target(v, c.dim());
  require_decoherent(c);
  const CircuitEval e = evaluate(c, false);
  EquableBandInput in;
  in.dim = c.dim();
  in.phi_v = trace_fidelity(v);
  in.phi_composed = phi(e.composed, adjoint(v));
  if (!non_catastrophic(in.phi_composed, e.upsilon)) {
    throw Error(ErrorCode::NotNonCatastrophic, "equable_composition: composition is catastrophic");
  }
  in.phi_lk_composed = trace_fidelity(matmul(v, e.lk_product));
  in.gamma_coh = equability_of_lk(v).gamma_coh;
  in.elements = e.elements;
  return equable_band(in);
}

BoundReport max_correction_multi(const CircuitSpec& circuit) {
  const CircuitEval e = evaluate(circuit, true);
  const int d = circuit.dim();
  ComplexMatrix v_total = identity(d);
  for (const auto& el : e.elements) v_total = matmul(el.v, v_total);
  // Phi(U_{m:1} V_{m:1}^dagger o A_{m:1}, U_{m:1}) = sum |<V_{m:1}, K>|^2 / d^2
  const double observed = phi(e.composed, v_total);
  const Sums s = sums_of(e.elements);
  const double g2 = sq(s.gamma);
  const double t_quad = 0.5 * sq(s.s_star);
  const double t_elem = s.s_star_sq;
  const double t_cross = s.s_star * (1.0 - s.prod_upsilon);
  const double t_spread2 = 2.0 * g2 * sq(s.sx);
  const double upper = s.prod_upsilon + t_quad + t_elem + t_cross + t_spread2;
  const double l_spread = g2 * s.sx_sq;
  const double l_prod = g2 * s.prod_sigma * sq(s.sx);
  const double l_quartic = 0.25 * g2 * g2 * std::pow(s.sx, 4);
  const double lower = s.prod_upsilon - l_spread - t_elem - l_prod - l_quartic;
  return make_report("max_correction_multi", observed, lower, upper,
                     {{"prod_upsilon", s.prod_upsilon},
                      {"gamma_decoh", s.gamma},
                      {"lk_quadratic", t_quad},
                      {"element_lk_gap", t_elem},
                      {"lk_cross", t_cross},
                      {"spread_cross", t_spread2},
                      {"spread", l_spread},
                      {"spread_product", l_prod},
                      {"spread_quartic", l_quartic}},
                     true);
}

Envelope coherent_envelope(const std::vector<double>& phi_over_upsilon, int d,
                           double prod_upsilon) {
  if (d < 2) throw Error(ErrorCode::ParamOutOfRange, "coherent_envelope: d < 2");
  Envelope env;
  double angle = 0.0;
  const double dd = static_cast<double>(d);
  for (double x : phi_over_upsilon) {
    if (!(x > 0.5 && x <= 1.0 + 1e-12)) {
      throw Error(ErrorCode::RatioOutOfRange,
                  "coherent_envelope: ratio " + std::to_string(x) + " outside (1/2, 1]");
    }
    double arg = d % 2 == 0 ? std::sqrt(x) : (dd * std::sqrt(x) - 1.0) / (dd - 1.0);
    if (arg > 1.0 || arg < -1.0) {
      env.clipped = true;
      arg = std::clamp(arg, -1.0, 1.0);
    }
    angle += std::acos(arg);
  }
  env.upper = prod_upsilon;
  if (angle > std::numbers::pi / 2) {
    env.angle_saturated = true;
    env.lower = 0.0;
    return env;
  }
  if (d % 2 == 0) {
    env.lower = sq(std::cos(angle)) * prod_upsilon;
  } else {
    env.lower = sq(((dd - 1.0) * std::cos(angle) + 1.0) / dd) * prod_upsilon;
  }
  return env;
}

}  // namespace qpolar
