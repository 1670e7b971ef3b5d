// Copyright 2026 The MIAudit Authors
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


#ifndef MIAUDIT_ORCHESTRATOR_CLI_H_
#define MIAUDIT_ORCHESTRATOR_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace miaudit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;     // bad manifest, input or I/O
inline constexpr int kExitUsage = 2;       // unknown flag or subcommand
inline constexpr int kExitCellErrors = 3;  // run finished, some cells failed

// args[0] is the program name. Subcommands: run, synth, inspect, roc.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace miaudit

#endif  // MIAUDIT_ORCHESTRATOR_CLI_H_
