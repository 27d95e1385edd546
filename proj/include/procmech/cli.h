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

#ifndef PROCMECH_CLI_H_
#define PROCMECH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace procmech::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerification = 4;

// Runs one command (args exclude the program name):
//   solve-sym   --env PATH [--grid N]
//   solve-asym  --env PATH
//   regime-map  [--gamma A:B:S] [--alpha A:B:S]
//   verify      --mech PATH [--env PATH] [--grid N] [--tol REL]
//   simulate    --mech PATH [--env PATH] [--draws N] [--seed S] [--bins N]
//   entry       --env PATH [--n N]
//   sweep       --env PATH --param alpha|beta|gamma|n --range A:B:S
// The primary artifact goes to `out`; with --out DIR the artifacts are also
// written there. Errors print {"error": ..., "message": ...} to `err`.
// Returns 0, 2 (validation), 3 (numeric failure) or 4 (verification failed).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace procmech::cli

#endif  // PROCMECH_CLI_H_
