// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "peppy/chain.hpp"
#include "peppy/fold.hpp"
#include "peppy/geometry.hpp"

namespace peppy {

enum class MagnetRole { Detent, HbondDonor, HbondAcceptor };
enum class Polarity { NOut, SOut };

/// One magnet of the printable model. Positions are in inches, local to the
/// owning rigid unit (the joint frame for detents, the amide plate for
/// donor/acceptor magnets).
struct MagnetSpec {
  MagnetRole role;
  int anchor;          // rotatable-dihedral index for detents, residue index otherwise
  Vec3 position_in;
  Polarity polarity;
  int strength_class = 1;

  bool operator==(const MagnetSpec&) const = default;
};

/// Per rotatable joint one detent magnet on a ring in the joint plane, plus
/// one donor and one acceptor magnet per residue at the H and O tips.
std::vector<MagnetSpec> magnet_layout(const ChainTopology& t, const DetentTable& detents,
                                      const PhysicalScale& s);

struct TriMesh {
  std::vector<Vec3> vertices;                  // inches
  std::vector<std::array<int, 3>> triangles;   // CCW from outside
  std::vector<Vec3> normals;                   // unit, per triangle

  int n_triangles() const { return static_cast<int>(triangles.size()); }
  bool watertight() const;       // every undirected edge on exactly 2 triangles
  bool winding_consistent() const;
  double signed_volume() const;  // cubic inches
  double min_triangle_area() const;
  /// Throws InvalidMesh when any shell invariant fails.
  void validate() const;
};

/// Unit icosphere triangulation helper (subdiv in 0..4).
TriMesh icosphere(const Vec3& center, double radius, int subdiv);

/// Scaled print mesh: one icosphere shell per atom at the hard-sphere radius,
/// one closed cylinder shell per bond. Shells overlap; no boolean union.
TriMesh mesh_model(const AtomSites& a, const ChainTopology& t, const PhysicalScale& s,
                   int sphere_subdiv = 2);

/// Binary STL, little-endian, 80-byte "PBM-STL v1" header; 84 + 50*T bytes.
std::string write_stl(const TriMesh& m);

/// PDB v3.3 fixed-column ATOM records, chain A, residues from 1, 3 decimals.
std::string write_pdb(const AtomSites& a, const ChainTopology& t);

/// The unified structure + fabrication record.
struct BioModel {
  int format_version = 1;
  std::string source_id;
  std::string note;
  std::string sequence;
  Conformation conformation;
  PhysicalScale scale;
  EnergyParams energy_params;
  std::vector<MagnetSpec> magnets;
  std::vector<Measurement> measurements;
  std::string extras_json;  // unknown top-level keys, preserved verbatim

  bool operator==(const BioModel&) const;
};

std::string write_pbm(const BioModel& b);
BioModel read_pbm(const std::string& text);

/// Convenience assembly: topology + conformation + defaults -> record.
BioModel make_biomodel(const std::string& sequence, const Conformation& c,
                       const PhysicalScale& s, const EnergyParams& p,
                       const DetentTable& detents, const std::string& source_id,
                       const std::string& note);

}  // namespace peppy
