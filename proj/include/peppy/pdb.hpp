// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "peppy/chain.hpp"
#include "peppy/geometry.hpp"
#include "peppy/vec3.hpp"

namespace peppy {

struct AtomRecord {
  int serial;
  std::string name;      // stripped atom name, e.g. "CA"
  char altloc;
  std::string res_name;  // e.g. "ALA"
  char chain_id;
  int res_seq;
  char icode;
  Vec3 pos;              // Angstrom
  double occupancy;
  std::string element;
};

struct RawStructure {
  std::vector<AtomRecord> records;
  std::string source_id;

  std::vector<char> chains() const;
};

struct TraceResidue {
  std::string name;   // three-letter
  int seq;            // author residue number
  char icode;
  Vec3 n, ca, c, o;
};

/// Backbone-complete residues of one chain. Continuity breaks (missing
/// atoms, chain gaps) split the trace into segments.
struct BackboneTrace {
  char chain_id = 'A';
  std::vector<TraceResidue> residues;
  std::vector<int> segment_of;  // aligned with residues
  int dropped_residues = 0;

  int n_segments() const { return residues.empty() ? 0 : segment_of.back() + 1; }
  bool unbroken() const { return n_segments() <= 1; }
};

/// Fixed-column PDB v3.3 reader; ATOM records of the first MODEL only.
RawStructure parse_pdb(std::istream& in, const std::string& source_id = "");
RawStructure parse_pdb(const std::string& text, const std::string& source_id = "");
RawStructure parse_pdb_file(const std::string& path);

BackboneTrace extract_backbone(const RawStructure& s, char chain);

/// Signed torsion in degrees, IUPAC convention, wrapped to [-180, 180).
double compute_dihedral(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4);

Conformation conformation_from_trace(const BackboneTrace& t);

/// One-letter sequence of the trace; unknown residue names throw.
std::string sequence_from_trace(const BackboneTrace& t,
                                const ResidueTable& table = default_residue_table());

/// Adapter for computed coordinates, single segment by construction.
BackboneTrace trace_from_sites(const ChainTopology& t, const AtomSites& a);

}  // namespace peppy
