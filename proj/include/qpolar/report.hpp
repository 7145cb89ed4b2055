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

#pragma once

#include <string>
#include <vector>

namespace qpolar {

struct Term {
  std::string name;
  double value = 0.0;
};

// observed checked against [lower, upper] with 1e-9 slack.
struct BoundReport {
  std::string theorem;
  double observed = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double slack_lower = 0.0;  // observed - lower
  double slack_upper = 0.0;  // upper - observed
  bool holds = true;
  bool applicable = true;
  bool hot_truncated = false;
  std::vector<Term> terms;
  std::string note;

  double term(const std::string& name) const;  // NaN when absent
  double slack() const { return slack_lower < slack_upper ? slack_lower : slack_upper; }
};

BoundReport make_report(std::string theorem, double observed, double lower,
                        double upper, std::vector<Term> terms,
                        bool hot_truncated = false);

BoundReport inapplicable_report(std::string theorem, std::string note);

}  // namespace qpolar
