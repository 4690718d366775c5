// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "peppy/chain.hpp"
#include "peppy/geometry.hpp"

namespace peppy {

/// Bundled chemistry/geometry tables. Shipped defaults are embedded in the
/// binary; a JSON config file may override any subset of blocks.
struct Config {
  ResidueTable residues = default_residue_table();
  BackboneGeometry geometry = default_backbone_geometry();
  CanonicalTable canonical = default_canonical_conformations();
  PhysicalScale scale;
};

Config default_config();

/// Parses the JSON schema described in the README; unknown keys rejected.
Config load_config(const std::string& json_text);
Config load_config_file(const std::string& path);

/// The embedded defaults, serialized in the config file schema.
std::string dump_config(const Config& c);

}  // namespace peppy
