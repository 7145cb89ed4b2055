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

#include "qpolar/report.hpp"

#include <limits>

namespace qpolar {

double BoundReport::term(const std::string& name) const {
  for (const auto& t : terms) {
    if (t.name == name) return t.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

BoundReport make_report(std::string theorem, double observed, double lower,
                        double upper, std::vector<Term> terms, bool hot_truncated) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.observed = observed;
  r.lower = lower;
  r.upper = upper;
  r.slack_lower = observed - lower;
  r.slack_upper = upper - observed;
  r.holds = lower - 1e-9 <= observed && observed <= upper + 1e-9;
  r.terms = std::move(terms);
  r.hot_truncated = hot_truncated;
  return r;
}

BoundReport inapplicable_report(std::string theorem, std::string note) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.applicable = false;
  r.holds = true;
  r.note = std::move(note);
  return r;
}

}  // namespace qpolar
