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

#ifndef PROCMECH_ERROR_H_
#define PROCMECH_ERROR_H_

#include <stdexcept>
#include <string>

namespace procmech {

enum class ErrorCode {
  kInvalidParameter,
  kMissingField,
  kUnknownKey,
  kDomainError,
  kOutOfRange,
  kNoConvergence,
  kNoRoot,
  kNonMonotone,
  kSingularSlope,
  kSingularEndpoint,
  kUndetermined,
};

// Name used in machine-readable error reports, e.g. "NoConvergence".
const char* ErrorCodeName(ErrorCode code);

// True for errors caused by bad input (as opposed to numeric failures).
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace procmech

#endif  // PROCMECH_ERROR_H_
