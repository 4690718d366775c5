// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peppy/errors.hpp"

namespace peppy {

enum class SideChainClass { Hydrogen, Methyl, GenericPlug };

/// One canonical amino acid: codes plus the effective sphere used for the
/// plug-in side-chain unit.
struct ResidueSpec {
  char one_letter;
  std::string three_letter;
  SideChainClass side_chain_class;
  double side_chain_radius;  // Angstrom
};

/// Rigid-unit backbone geometry. Lengths in Angstrom, angles in degrees.
/// omega_deg is the peptide-bond dihedral, fixed planar trans.
struct BackboneGeometry {
  double n_ca = 1.458;
  double ca_c = 1.525;
  double c_n = 1.329;
  double c_o = 1.231;
  double n_h = 1.010;
  double ca_ha = 1.090;
  double ca_sc = 1.530;

  double ang_n_ca_c = 110.0;
  double ang_ca_c_n = 116.2;
  double ang_c_n_ca = 121.7;
  double ang_ca_c_o = 120.8;
  double ang_c_n_h = 119.15;

  double omega_deg = 180.0;

  /// Throws ConfigError if any value is out of its sane range.
  void validate() const;
};

/// Atom roles within a residue, in the fixed per-residue order.
enum class AtomRole : int { N = 0, H = 1, CA = 2, HA = 3, C = 4, O = 5, SC = 6 };
inline constexpr int kAtomsPerResidue = 7;

struct Atom {
  int residue;      // 0-based
  AtomRole role;
  char element;     // 'N','C','O','H'; SC carries 'C' ('H' for glycine)
};

enum class DihedralKind { Phi, Psi };

struct RotatableDihedral {
  DihedralKind kind;
  int residue;                 // 0-based residue the angle belongs to
  std::array<int, 4> atoms;    // defining quadruple, global atom indices
};

/// Coarse-grained rigid-unit decomposition of a residue sequence.
struct ChainTopology {
  std::vector<ResidueSpec> sequence;
  std::vector<Atom> atoms;
  std::vector<std::pair<int, int>> bonds;
  std::vector<RotatableDihedral> rotatable;

  int n_residues() const { return static_cast<int>(sequence.size()); }
  int atom_index(int residue, AtomRole role) const {
    return residue * kAtomsPerResidue + static_cast<int>(role);
  }
};

/// Per-residue (phi, psi) assignment; absent entries only at the termini
/// (and across trace breaks). Angles in [-180, 180).
struct Conformation {
  std::vector<std::optional<double>> phi;
  std::vector<std::optional<double>> psi;

  int n_residues() const { return static_cast<int>(phi.size()); }
  bool operator==(const Conformation&) const = default;
};

struct ConformationEntry {
  std::string name;
  bool is_turn = false;
  double phi = 0, psi = 0;          // uniform pair (helix/strand families)
  double phi2 = 0, psi2 = 0;        // second pair for turns
  bool is_detent = false;
};

/// Named ideal secondary-structure angle table.
struct CanonicalTable {
  std::vector<ConformationEntry> entries;
  const ConformationEntry* find(const std::string& name) const;
  /// The two magnet-detent conformations (alpha first, then beta).
  std::vector<const ConformationEntry*> detents() const;
};

class ResidueTable {
 public:
  explicit ResidueTable(std::vector<ResidueSpec> entries);
  const ResidueSpec& lookup(const std::string& code) const;
  const std::vector<ResidueSpec>& entries() const { return entries_; }

 private:
  std::vector<ResidueSpec> entries_;
};

const ResidueTable& default_residue_table();
const BackboneGeometry& default_backbone_geometry();
const CanonicalTable& default_canonical_conformations();

/// Looks up a residue by one- or three-letter code, case-insensitively.
const ResidueSpec& lookup_residue(const std::string& code);

ChainTopology build_topology(const std::string& sequence,
                             const ResidueTable& table = default_residue_table());

Conformation canonical_conformation(const std::string& name, int n,
                                    const CanonicalTable& table = default_canonical_conformations());

}  // namespace peppy
