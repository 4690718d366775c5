// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace peppy {

using ordered_json = nlohmann::ordered_json;

Config default_config() { return Config{}; }

namespace {

SideChainClass side_chain_class_from(const std::string& s) {
  if (s == "hydrogen") return SideChainClass::Hydrogen;
  if (s == "methyl") return SideChainClass::Methyl;
  if (s == "generic_plug") return SideChainClass::GenericPlug;
  throw ConfigError("unknown side_chain_class '" + s + "'");
}

const char* side_chain_class_name(SideChainClass c) {
  switch (c) {
    case SideChainClass::Hydrogen: return "hydrogen";
    case SideChainClass::Methyl: return "methyl";
    case SideChainClass::GenericPlug: return "generic_plug";
  }
  return "?";
}

void apply_geometry(BackboneGeometry& g, const ordered_json& j) {
  g.n_ca = j.value("n_ca", g.n_ca);
  g.ca_c = j.value("ca_c", g.ca_c);
  g.c_n = j.value("c_n", g.c_n);
  g.c_o = j.value("c_o", g.c_o);
  g.n_h = j.value("n_h", g.n_h);
  g.ca_ha = j.value("ca_ha", g.ca_ha);
  g.ca_sc = j.value("ca_sc", g.ca_sc);
  g.ang_n_ca_c = j.value("ang_n_ca_c", g.ang_n_ca_c);
  g.ang_ca_c_n = j.value("ang_ca_c_n", g.ang_ca_c_n);
  g.ang_c_n_ca = j.value("ang_c_n_ca", g.ang_c_n_ca);
  g.ang_ca_c_o = j.value("ang_ca_c_o", g.ang_ca_c_o);
  g.ang_c_n_h = j.value("ang_c_n_h", g.ang_c_n_h);
  g.omega_deg = j.value("omega_deg", g.omega_deg);
  g.validate();
}

}  // namespace

Config load_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  Config c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "residues") {
        std::vector<ResidueSpec> entries;
        for (const auto& r : val) {
          ResidueSpec spec;
          const std::string one = r.at("one_letter").get<std::string>();
          if (one.size() != 1) throw ConfigError("one_letter must be a single character");
          spec.one_letter = one[0];
          spec.three_letter = r.at("three_letter").get<std::string>();
          spec.side_chain_class = side_chain_class_from(r.at("side_chain_class").get<std::string>());
          spec.side_chain_radius = r.at("side_chain_radius").get<double>();
          entries.push_back(spec);
        }
        c.residues = ResidueTable(std::move(entries));
      } else if (key == "backbone_geometry") {
        apply_geometry(c.geometry, val);
      } else if (key == "canonical_conformations") {
        CanonicalTable t;
        for (const auto& e : val) {
          ConformationEntry entry;
          entry.name = e.at("name").get<std::string>();
          entry.phi = e.at("phi").get<double>();
          entry.psi = e.at("psi").get<double>();
          entry.is_turn = e.value("is_turn", false);
          if (entry.is_turn) {
            entry.phi2 = e.at("phi2").get<double>();
            entry.psi2 = e.at("psi2").get<double>();
          }
          entry.is_detent = e.value("is_detent", false);
          for (double a : {entry.phi, entry.psi, entry.phi2, entry.psi2})
            if (a < -180.0 || a >= 180.0)
              throw ConfigError("canonical angle out of [-180, 180) for " + entry.name);
          t.entries.push_back(entry);
        }
        c.canonical = t;
      } else if (key == "scale") {
        c.scale.inches_per_angstrom = val.value("inches_per_angstrom", c.scale.inches_per_angstrom);
        c.scale.radius_factor = val.value("radius_factor", c.scale.radius_factor);
        if (val.contains("vdw_radii")) {
          c.scale.vdw_radii.clear();
          for (const auto& [el, r] : val.at("vdw_radii").items()) {
            if (el.size() != 1) throw ConfigError("vdw_radii keys must be single characters");
            c.scale.vdw_radii[el[0]] = r.get<double>();
          }
        }
        c.scale.validate();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config schema error: ") + e.what());
  }
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string dump_config(const Config& c) {
  ordered_json j;
  ordered_json residues = ordered_json::array();
  for (const auto& r : c.residues.entries())
    residues.push_back({{"one_letter", std::string(1, r.one_letter)},
                        {"three_letter", r.three_letter},
                        {"side_chain_class", side_chain_class_name(r.side_chain_class)},
                        {"side_chain_radius", r.side_chain_radius}});
  j["residues"] = residues;
  j["backbone_geometry"] = {{"n_ca", c.geometry.n_ca},
                            {"ca_c", c.geometry.ca_c},
                            {"c_n", c.geometry.c_n},
                            {"c_o", c.geometry.c_o},
                            {"n_h", c.geometry.n_h},
                            {"ca_ha", c.geometry.ca_ha},
                            {"ca_sc", c.geometry.ca_sc},
                            {"ang_n_ca_c", c.geometry.ang_n_ca_c},
                            {"ang_ca_c_n", c.geometry.ang_ca_c_n},
                            {"ang_c_n_ca", c.geometry.ang_c_n_ca},
                            {"ang_ca_c_o", c.geometry.ang_ca_c_o},
                            {"ang_c_n_h", c.geometry.ang_c_n_h},
                            {"omega_deg", c.geometry.omega_deg}};
  ordered_json canonical = ordered_json::array();
  for (const auto& e : c.canonical.entries) {
    ordered_json entry = {{"name", e.name}, {"phi", e.phi}, {"psi", e.psi}};
    if (e.is_turn) {
      entry["is_turn"] = true;
      entry["phi2"] = e.phi2;
      entry["psi2"] = e.psi2;
    }
    if (e.is_detent) entry["is_detent"] = true;
    canonical.push_back(entry);
  }
  j["canonical_conformations"] = canonical;
  ordered_json radii;
  for (const auto& [el, r] : c.scale.vdw_radii) radii[std::string(1, el)] = r;
  j["scale"] = {{"inches_per_angstrom", c.scale.inches_per_angstrom},
                {"radius_factor", c.scale.radius_factor},
                {"vdw_radii", radii}};
  return j.dump(2) + "\n";
}

}  // namespace peppy
