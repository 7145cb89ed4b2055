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

#include "qpolar/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qpolar/errors.hpp"

namespace qpolar {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

int read_dim(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    parse_error("missing integer field 'dim'");
  }
  const int d = j["dim"].get<int>();
  if (d < 1) parse_error("'dim' must be positive");
  return d;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int k = 0; k < m.cols(); ++k) arr.push_back({m(i, k).real(), m(i, k).imag()});
  }
  return arr;
}

ComplexMatrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array()) parse_error("matrix must be an array of [re, im] pairs");
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (j.size() != n) {
    parse_error("matrix has " + std::to_string(j.size()) + " entries, expected " +
                std::to_string(n));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Json& e = j[idx];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      parse_error("matrix entry " + std::to_string(idx) + " is not a [re, im] pair");
    }
    m(static_cast<int>(idx) / cols, static_cast<int>(idx) % cols) =
        cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json channel_to_json(const KrausChannel& ch) {
  Json j;
  j["dim"] = ch.dim;
  Json ops = Json::array();
  for (const auto& a : ch.kraus) ops.push_back(matrix_to_json(a));
  j["kraus"] = std::move(ops);
  return j;
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) parse_error("channel must be a JSON object");
  if (j.contains("family")) return make_channel(family_spec_from_json(j));
  const int d = read_dim(j);
  if (j.contains("kraus")) {
    const Json& ops = j["kraus"];
    if (!ops.is_array() || ops.empty()) parse_error("'kraus' must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const auto& op : ops) kraus.push_back(matrix_from_json(op, d, d));
    return KrausChannel(d, std::move(kraus));
  }
  if (j.contains("choi")) {
    ChoiMatrix choi;
    choi.dim = d;
    choi.matrix = matrix_from_json(j["choi"], d * d, d * d);
    return from_choi(choi).to_channel();
  }
  parse_error("channel needs a 'kraus', 'choi' or 'family' field");
}

Json family_spec_to_json(const FamilySpec& spec) {
  Json j;
  j["family"] = family_name(spec.family);
  j["dim"] = spec.dim;
  Json p = Json::object();
  for (const auto& [k, v] : spec.params) p[k] = v;
  j["params"] = std::move(p);
  j["seed"] = spec.seed;
  return j;
}

FamilySpec family_spec_from_json(const Json& j) {
  if (!j.is_object()) parse_error("family spec must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string()) {
    parse_error("missing string field 'family'");
  }
  FamilySpec spec;
  spec.family = family_from_name(j["family"].get<std::string>());
  spec.dim = read_dim(j);
  if (j.contains("params")) {
    if (!j["params"].is_object()) parse_error("'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) parse_error("parameter '" + k + "' must be a number");
      spec.params[k] = v.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      parse_error("'seed' must be a non-negative integer");
    }
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  return spec;
}

Json report_to_json(const BoundReport& r) {
  Json j;
  j["theorem"] = r.theorem;
  j["applicable"] = r.applicable;
  j["observed"] = r.observed;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["slack_lower"] = r.slack_lower;
  j["slack_upper"] = r.slack_upper;
  j["holds"] = r.holds;
  j["hot_truncated"] = r.hot_truncated;
  Json terms = Json::object();
  for (const auto& t : r.terms) terms[t.name] = t.value;
  j["terms"] = std::move(terms);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qpolar
