// Copyright 2026 The dickesim authors
//
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

#pragma once

namespace dickesim {

// Parses argv, runs one subcommand and returns the process exit code:
// 0 success, 2 usage or configuration error, 1 runtime or fit failure.
int run_cli(int argc, const char* const* argv);

}  // namespace dickesim
