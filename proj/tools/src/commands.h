// Copyright 2026 The lepski-rkhs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEPSKI_TOOLS_COMMANDS_H_
#define LEPSKI_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>

#include "lepski/dataset.h"
#include "run_config.h"

namespace lepski::cli {

struct Invocation {
  RunConfig config;
  std::string out_dir = ".";
  std::string data_path;  // empty: replicate 0 of the configured scenario
};

// CSV with header x_1,...,x_d,y. Errors name the offending line.
Dataset ReadDataCsv(const std::string& path);

void CmdFit(const Invocation& inv, std::ostream& log);
void CmdSelect(const Invocation& inv, std::ostream& log);
void CmdSelectGauss(const Invocation& inv, std::ostream& log);
void CmdRates(const Invocation& inv, std::ostream& log);
void CmdMajorant(const Invocation& inv, std::ostream& log);
void CmdBounds(const Invocation& inv, std::ostream& log);

// Exit codes: 0 success, 2 input error, 3 constraint violation, 4 numerical
// failure, 1 anything else.
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lepski::cli

#endif  // LEPSKI_TOOLS_COMMANDS_H_
