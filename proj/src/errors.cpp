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

#include "qpolar/errors.hpp"

namespace qpolar {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::DegenerateLeading: return "DegenerateLeading";
    case ErrorCode::TargetNotUnitary: return "TargetNotUnitary";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::PhaseUndefined: return "PhaseUndefined";
    case ErrorCode::NotNonCatastrophic: return "NotNonCatastrophic";
    case ErrorCode::NotDecoherent: return "NotDecoherent";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::NotTraceless: return "NotTraceless";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace qpolar
