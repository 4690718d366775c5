// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/chain.hpp"

#include <algorithm>
#include <cctype>

namespace peppy {

void BackboneGeometry::validate() const {
  const double lengths[] = {n_ca, ca_c, c_n, c_o, n_h, ca_ha, ca_sc};
  for (double b : lengths)
    if (!(b > 0.8 && b < 1.8))
      throw ConfigError("bond length " + std::to_string(b) + " outside (0.8, 1.8) A");
  const double angles[] = {ang_n_ca_c, ang_ca_c_n, ang_c_n_ca, ang_ca_c_o, ang_c_n_h};
  for (double a : angles)
    if (!(a > 90.0 && a < 180.0))
      throw ConfigError("bond angle " + std::to_string(a) + " outside (90, 180) deg");
  if (omega_deg != 180.0)
    throw ConfigError("omega must be exactly 180 (rigid planar trans amide)");
}

ResidueTable::ResidueTable(std::vector<ResidueSpec> entries) : entries_(std::move(entries)) {
  if (entries_.size() != 20)
    throw ConfigError("residue table must have exactly 20 entries, got " +
                      std::to_string(entries_.size()));
  for (size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.side_chain_class != SideChainClass::Hydrogen && !(e.side_chain_radius > 0))
      throw ConfigError(std::string("non-glycine side_chain_radius must be > 0 for ") +
                        e.three_letter);
    for (size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[j].one_letter == e.one_letter || entries_[j].three_letter == e.three_letter)
        throw ConfigError(std::string("duplicate residue code ") + e.three_letter);
    }
  }
}

const ResidueSpec& ResidueTable::lookup(const std::string& code) const {
  std::string up(code);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up.size() == 1) {
    for (const auto& e : entries_)
      if (e.one_letter == up[0]) return e;
  } else if (up.size() == 3) {
    for (const auto& e : entries_)
      if (e.three_letter == up) return e;
  }
  throw UnknownResidue("unknown residue code '" + code + "'");
}

namespace {

std::vector<ResidueSpec> builtin_residues() {
  using SC = SideChainClass;
  // Effective plug-unit sphere radii; coarse single-sphere stand-ins sized by
  // side-chain bulk. Editable via the config file.
  return {
      {'G', "GLY", SC::Hydrogen, 1.20},    {'A', "ALA", SC::Methyl, 2.00},
      {'S', "SER", SC::GenericPlug, 2.00}, {'C', "CYS", SC::GenericPlug, 2.20},
      {'T', "THR", SC::GenericPlug, 2.40}, {'V', "VAL", SC::GenericPlug, 2.50},
      {'P', "PRO", SC::GenericPlug, 2.30}, {'I', "ILE", SC::GenericPlug, 2.70},
      {'L', "LEU", SC::GenericPlug, 2.70}, {'M', "MET", SC::GenericPlug, 2.80},
      {'N', "ASN", SC::GenericPlug, 2.50}, {'D', "ASP", SC::GenericPlug, 2.45},
      {'Q', "GLN", SC::GenericPlug, 2.70}, {'E', "GLU", SC::GenericPlug, 2.65},
      {'K', "LYS", SC::GenericPlug, 2.90}, {'R', "ARG", SC::GenericPlug, 3.00},
      {'H', "HIS", SC::GenericPlug, 2.80}, {'F', "PHE", SC::GenericPlug, 2.90},
      {'Y', "TYR", SC::GenericPlug, 3.00}, {'W', "TRP", SC::GenericPlug, 3.20},
  };
}

CanonicalTable builtin_canonical() {
  CanonicalTable t;
  t.entries = {
      {"alpha_helix", false, -57, -47, 0, 0, true},
      {"three_ten_helix", false, -49, -26, 0, 0, false},
      {"pi_helix", false, -57, -70, 0, 0, false},
      {"parallel_beta", false, -119, 113, 0, 0, false},
      {"antiparallel_beta", false, -139, 135, 0, 0, true},
      {"beta_turn_I", true, -60, -30, -90, 0, false},
      {"beta_turn_II", true, -60, 120, 80, 0, false},
  };
  return t;
}

}  // namespace

const ResidueTable& default_residue_table() {
  static const ResidueTable table(builtin_residues());
  return table;
}

const BackboneGeometry& default_backbone_geometry() {
  static const BackboneGeometry g;
  return g;
}

const CanonicalTable& default_canonical_conformations() {
  static const CanonicalTable t = builtin_canonical();
  return t;
}

const ResidueSpec& lookup_residue(const std::string& code) {
  return default_residue_table().lookup(code);
}

const ConformationEntry* CanonicalTable::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<const ConformationEntry*> CanonicalTable::detents() const {
  std::vector<const ConformationEntry*> out;
  for (const auto& e : entries)
    if (e.is_detent) out.push_back(&e);
  return out;
}

ChainTopology build_topology(const std::string& sequence, const ResidueTable& table) {
  if (sequence.empty()) throw EmptyChain("empty residue sequence");
  ChainTopology t;
  const int n = static_cast<int>(sequence.size());
  t.sequence.reserve(n);
  for (char c : sequence) t.sequence.push_back(table.lookup(std::string(1, c)));

  t.atoms.reserve(static_cast<size_t>(n) * kAtomsPerResidue);
  for (int i = 0; i < n; ++i) {
    const bool gly = t.sequence[i].side_chain_class == SideChainClass::Hydrogen;
    t.atoms.push_back({i, AtomRole::N, 'N'});
    t.atoms.push_back({i, AtomRole::H, 'H'});
    t.atoms.push_back({i, AtomRole::CA, 'C'});
    t.atoms.push_back({i, AtomRole::HA, 'H'});
    t.atoms.push_back({i, AtomRole::C, 'C'});
    t.atoms.push_back({i, AtomRole::O, 'O'});
    t.atoms.push_back({i, AtomRole::SC, gly ? 'H' : 'C'});
  }

  auto idx = [&](int r, AtomRole a) { return t.atom_index(r, a); };
  for (int i = 0; i < n; ++i) {
    t.bonds.emplace_back(idx(i, AtomRole::N), idx(i, AtomRole::H));
    t.bonds.emplace_back(idx(i, AtomRole::N), idx(i, AtomRole::CA));
    t.bonds.emplace_back(idx(i, AtomRole::CA), idx(i, AtomRole::HA));
    t.bonds.emplace_back(idx(i, AtomRole::CA), idx(i, AtomRole::C));
    t.bonds.emplace_back(idx(i, AtomRole::C), idx(i, AtomRole::O));
    t.bonds.emplace_back(idx(i, AtomRole::CA), idx(i, AtomRole::SC));
    if (i + 1 < n) t.bonds.emplace_back(idx(i, AtomRole::C), idx(i + 1, AtomRole::N));
  }

  // phi(i) for i in 2..n, psi(i) for i in 1..n-1; chain order, phi first.
  for (int i = 0; i < n; ++i) {
    if (i > 0)
      t.rotatable.push_back({DihedralKind::Phi, i,
                             {idx(i - 1, AtomRole::C), idx(i, AtomRole::N),
                              idx(i, AtomRole::CA), idx(i, AtomRole::C)}});
    if (i + 1 < n)
      t.rotatable.push_back({DihedralKind::Psi, i,
                             {idx(i, AtomRole::N), idx(i, AtomRole::CA),
                              idx(i, AtomRole::C), idx(i + 1, AtomRole::N)}});
  }
  return t;
}

Conformation canonical_conformation(const std::string& name, int n, const CanonicalTable& table) {
  if (n < 1) throw EmptyChain("residue count must be >= 1");
  const ConformationEntry* e = table.find(name);
  if (!e) throw UnknownConformation("unknown conformation '" + name + "'");

  Conformation c;
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  const ConformationEntry* ext = table.find("antiparallel_beta");
  const double ext_phi = ext ? ext->phi : -139.0;
  const double ext_psi = ext ? ext->psi : 135.0;

  for (int i = 0; i < n; ++i) {
    if (i > 0) c.phi[i] = e->is_turn ? ext_phi : e->phi;
    if (i + 1 < n) c.psi[i] = e->is_turn ? ext_psi : e->psi;
  }
  if (e->is_turn && n >= 2) {
    const int a = (n - 2) / 2;  // two-pair pattern at the central residues
    if (a > 0) c.phi[a] = e->phi;
    c.psi[a] = e->psi;
    c.phi[a + 1] = e->phi2;
    if (a + 2 < n) c.psi[a + 1] = e->psi2;
  }
  return c;
}

}  // namespace peppy
