// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peppy::cli {

/// Dispatches one subcommand. Exit codes: 0 success, 1 domain error,
/// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peppy::cli
