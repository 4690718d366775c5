// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "peppy/chain.hpp"
#include "peppy/vec3.hpp"

namespace peppy {

/// Atom coordinates in Angstrom, index-aligned with ChainTopology::atoms.
struct AtomSites {
  std::vector<Vec3> positions;
  int n_atoms() const { return static_cast<int>(positions.size()); }
};

/// Fabrication parameter set: print scale, hard-sphere shrink factor and
/// the per-element Van der Waals radii (Bondi set).
struct PhysicalScale {
  double inches_per_angstrom = 0.3676;
  double radius_factor = 0.7;
  std::map<char, double> vdw_radii = {{'C', 1.70}, {'N', 1.55}, {'O', 1.52}, {'H', 1.20}};

  double to_physical(double angstrom) const { return angstrom * inches_per_angstrom; }
  double from_physical(double inches) const { return inches / inches_per_angstrom; }

  /// Full-scale sphere radius of one topology atom, in Angstrom.
  /// Side-chain anchors use the residue's plug radius, not the element table.
  double radius_of(const ChainTopology& t, int atom) const;

  void validate() const;
  bool operator==(const PhysicalScale&) const = default;
};

struct Clash {
  int a, b;          // atom indices, a < b
  double distance;   // Angstrom
  double overlap;    // threshold - distance, > 0
};

struct ClashReport {
  std::vector<Clash> clashes;
  double total_overlap = 0.0;
  bool empty() const { return clashes.empty(); }
};

struct HBond {
  int donor;      // residue index of the N-H
  int acceptor;   // residue index of the C=O
  double distance;  // O..N, Angstrom
};

struct HBondSet {
  std::vector<HBond> bonds;
  double mean_distance() const;
  double sd_distance() const;
};

/// Places an atom at bond length r from a, bond angle theta (X-a-b) and
/// torsion tau (X-a-b-c), matching the compute_dihedral sign convention.
Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c,
                double r, double theta_deg, double tau_deg);

/// Internal-coordinate chain extension. Residue 1's N at the origin, its CA
/// on +x and its N-CA-C plane in z=0; omega fixed trans.
AtomSites forward_kinematics(const ChainTopology& t, const BackboneGeometry& g,
                             const Conformation& c);

/// All non-bonded pairs (graph distance > 3 bonds) closer than
/// radius_factor * (R_i + R_j), sorted by index pair.
ClashReport detect_clashes(const AtomSites& a, const ChainTopology& t,
                           const PhysicalScale& s);

inline constexpr double kHbondMinAngleDeg = 120.0;  // N-H...O angle gate

/// Backbone hydrogen bonds: O(j)..N(i) pairs with |i-j| >= 3 within the
/// cutoff and an N-H...O angle of at least 120 degrees.
HBondSet find_hbonds(const AtomSites& a, const ChainTopology& t, double cutoff = 3.5);

/// Precomputed atom pairs separated by more than `max_bonds` bonds.
std::vector<std::pair<int, int>> nonbonded_pairs(const ChainTopology& t, int max_bonds = 3);

enum class FeatureKind { AtomPair, CaPair, HelixSpan, NPair, HbondStats };

struct FeatureSpec {
  FeatureKind kind;
  int i = 0, j = 0;  // 1-based indices as given by the user
  /// Grammar: "span" | "ca:I-J" | "n:I-J" | "atoms:I-J" | "hbonds".
  static FeatureSpec parse(const std::string& text);
  std::string str() const;
};

/// One metrology record; values carried in both unit systems.
struct Measurement {
  std::string feature;
  std::vector<double> values;  // per-instance, Angstrom
  double value_angstrom = 0.0; // mean of values
  double value_inch = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;

  bool operator==(const Measurement&) const = default;
};

Measurement measure(const AtomSites& a, const ChainTopology& t,
                    const FeatureSpec& feature, const PhysicalScale& s);

/// CSV rows: feature,value_angstrom,value_inch,n,mean,sd (with header).
std::string measurements_to_csv(const std::vector<Measurement>& rows);

}  // namespace peppy
