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

#include "qpolar/sweep.hpp"

#include <cmath>
#include <limits>

#include "qpolar/errors.hpp"
#include "qpolar/metrics.hpp"
#include "qpolar/polar.hpp"

namespace qpolar {

std::vector<DepthRow> repeated_element_sweep(const KrausChannel& element, int max_depth,
                                             bool stop_when_catastrophic) {
  if (max_depth < 1) throw Error(ErrorCode::ParamOutOfRange, "sweep: depth must be >= 1");
  const int d = element.dim;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const ComplexMatrix id = identity(d);
  const ChannelPolar cp = channel_polar(element);
  ElementStats dstats = element_stats(cp.decoherent_left, id);
  const ComplexMatrix va1 = matmul(cp.v, dstats.a1);
  dstats.a1.resize(0, 0);
  dstats.v.resize(0, 0);
  const double ups = upsilon(element);
  const double ratio = phi(element, id) / ups;

  std::vector<DepthRow> rows;
  KrausChannel acc = element;
  ComplexMatrix vm = cp.v;
  ComplexMatrix lkm = va1;
  EquableBandInput in;
  in.dim = d;
  for (int m = 1; m <= max_depth; ++m) {
    if (m > 1) {
      acc = compose(acc, element);
      vm = matmul(cp.v, vm);
      lkm = matmul(va1, lkm);
    }
    in.elements.push_back(dstats);
    DepthRow row;
    row.depth = m;
    row.phi = phi(acc, id);
    const double ups_m = upsilon(acc);
    row.prod_upsilon = std::pow(ups, m);
    row.decoherent_envelope = std::pow(dstats.phi, m);
    row.non_catastrophic = non_catastrophic(row.phi, ups_m);

    in.phi_v = std::norm(trace(vm)) / (static_cast<double>(d) * d);
    in.phi_composed = row.phi;
    in.phi_lk_composed = std::norm(trace(lkm)) / (static_cast<double>(d) * d);
    try {
      in.gamma_coh = equability_of_lk(vm).gamma_coh;
      row.band = equable_band(in);
      const double center = row.band.term("center");
      row.band_lower = center - row.band.upper;
      row.band_upper = center + row.band.upper;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PhaseUndefined) throw;
      row.band = inapplicable_report("equable_composition", e.what());
      row.band_defined = false;
      row.band_lower = nan;
      row.band_upper = nan;
    }
    try {
      const Envelope env = coherent_envelope(std::vector<double>(static_cast<std::size_t>(m), ratio),
                                             d, row.prod_upsilon);
      row.envelope_lower = env.lower;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RatioOutOfRange) throw;
      row.envelope_lower = nan;
    }
    rows.push_back(std::move(row));
    if (stop_when_catastrophic && !rows.back().non_catastrophic) break;
  }
  return rows;
}

}  // namespace qpolar
