// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace peppy {

struct CheckResult {
  std::string id;
  std::string detail;  // expected vs measured, human-readable
  bool pass = false;
};

/// Runs the full validation suite against the bundled fixtures.
/// `only` restricts to checks whose id starts with that prefix.
std::vector<CheckResult> run_validation(const std::string& fixtures_dir,
                                        const std::string& only = "");

/// Formats one table line per check.
std::string format_validation_report(const std::vector<CheckResult>& results);

}  // namespace peppy
