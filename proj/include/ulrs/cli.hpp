// ulrs/cli.hpp

// Copyright 2026  The ULRS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ULRS_CLI_HPP
#define ULRS_CLI_HPP

namespace ulrs::cli {

/// Dispatches the learn / detect / roc / synth / sweep / vad subcommands.
/// Exit codes: 0 success, 1 usage error, 2 data or numeric error.
int run_cli(int argc, const char* const* argv);

}  // namespace ulrs::cli

#endif  // ULRS_CLI_HPP
