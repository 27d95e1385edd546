// Copyright 2026 The procmech Authors
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

#include "procmech/error.h"

namespace procmech {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNoRoot: return "NoRoot";
    case ErrorCode::kNonMonotone: return "NonMonotone";
    case ErrorCode::kSingularSlope: return "SingularSlope";
    case ErrorCode::kSingularEndpoint: return "SingularEndpoint";
    case ErrorCode::kUndetermined: return "Undetermined";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  return code == ErrorCode::kInvalidParameter ||
         code == ErrorCode::kMissingField || code == ErrorCode::kUnknownKey ||
         code == ErrorCode::kDomainError;
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace procmech
