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

#include "json.hpp"
#include "qpolar/channel.hpp"
#include "qpolar/genlib.hpp"
#include "qpolar/report.hpp"

namespace qpolar {

using Json = nlohmann::ordered_json;

// Matrices are flat row-major arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, int rows, int cols);

// { "dim": d, "kraus": [...] }, { "dim": d, "choi": [...] } or a FamilySpec.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

Json family_spec_to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);

Json report_to_json(const BoundReport& r);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

std::string format_double(double x);  // %.17g

}  // namespace qpolar
