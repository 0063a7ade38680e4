/*
 * Copyright 2026 The DSA Keyrate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dsa/error.h"

namespace dsa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidUserCount: return "InvalidUserCount";
    case ErrorCode::kInvalidSet: return "InvalidSet";
    case ErrorCode::kNothingToProtect: return "NothingToProtect";
    case ErrorCode::kCollusionTooLarge: return "CollusionTooLarge";
    case ErrorCode::kClosureTooLarge: return "ClosureTooLarge";
    case ErrorCode::kInternalInconsistency: return "InternalInconsistency";
    case ErrorCode::kNotFractionalCase: return "NotFractionalCase";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMissingLpSolution: return "MissingLpSolution";
    case ErrorCode::kResampleExhausted: return "ResampleExhausted";
    case ErrorCode::kNonRationalSolution: return "NonRationalSolution";
    case ErrorCode::kOverrideNotPrime: return "OverrideNotPrime";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dsa
