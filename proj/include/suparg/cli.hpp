/*
 *   Copyright 2026 The suparg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUPARG_CLI_HPP
#define SUPARG_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace suparg::cli {

/// Exit codes: 0 success / valid, 1 proof failure / invalid, 2 usage or input error.
enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

/**
 * Runs one command line (without the program name):
 *
 *   prove <bvt|evt|ivt|uct|dit|sift|ift|mvi|cft> --fn EXPR --a A --b B
 *         [--eps E] [--M M] [--eta H] [--tol T] [--h-min S] [--h-init S]
 *         [--max-pieces N] [--out FILE]
 *   check FILE
 *   cover --file COVER --a A --b B
 *   clopen --file SET --a A --b B
 *
 * Every command accepts --format json|text (default json). Errors print
 * one line "error: <Kind>: <message>" on `err`.
 */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace suparg::cli

#endif
