// Copyright 2026 The gecomb Authors
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

#ifndef GECOMB_CLI_H_
#define GECOMB_CLI_H_

#include <ostream>

namespace gecomb {

/// Entry point of the `gecomb` tool. Returns 0 on success, 1 on a usage or
/// validation error, 2 on a runtime error. Data goes to `out` or to files;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace gecomb

#endif  // GECOMB_CLI_H_
