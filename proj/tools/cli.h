// tools/cli.h

// Copyright 2026  The hasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HASR_TOOLS_CLI_H_
#define HASR_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hasr {
namespace cli {

inline constexpr const char *kToolkitVersion = "1.0.0";

/// The subcommand that owns each library operation.
struct OperationOwner {
  const char *module;
  const char *operation;
  const char *subcommand;
};

const std::vector<OperationOwner> &CommandTable();

/// Module whose config section a subcommand reads.
const char *ConfigSection(const std::string &subcommand);

/// Names of all registered subcommands, in registration order.
std::vector<std::string> SubcommandNames();

/// Runs the tool on the given arguments (argv[0] included). Results go to
/// `out`; errors are reported on `err` as a single "ERROR <code>: <message>"
/// line. Returns the process exit code.
int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cli
}  // namespace hasr

#endif  // HASR_TOOLS_CLI_H_
