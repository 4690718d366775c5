// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "peppy/chain.hpp"
#include "peppy/geometry.hpp"

namespace peppy {

/// Square grid over (phi, psi) in [-180, 180)^2; half-open bins.
/// Feasibility maps hold 0/1 flags, histograms hold counts.
struct RamaMap {
  enum class Mode { Feasibility, Histogram };

  int bin_width = 10;
  Mode mode = Mode::Histogram;
  std::string label;
  std::vector<double> cells;  // phi-major: cells[iphi * bins() + ipsi]

  int bins() const { return 360 / bin_width; }
  double& at(int iphi, int ipsi) { return cells[static_cast<size_t>(iphi) * bins() + ipsi]; }
  double at(int iphi, int ipsi) const { return cells[static_cast<size_t>(iphi) * bins() + ipsi]; }

  int bin_of(double angle_deg) const;          // index of the containing bin
  double center_of(int bin_index) const;       // bin center angle
  double total() const;

  static void check_bin_width(int w);
};

/// Sweeps the central residue of the probe over all cell centers; a cell is
/// feasible when the built probe has zero hard-sphere clashes. Flanking
/// residues stay extended at the antiparallel-beta detent.
RamaMap feasibility_map(const std::string& probe, const PhysicalScale& scale, int bin_width,
                        const ResidueTable& residues = default_residue_table(),
                        const BackboneGeometry& geometry = default_backbone_geometry(),
                        const CanonicalTable& canonical = default_canonical_conformations());

RamaMap histogram(const std::vector<Conformation>& confs, int bin_width);

struct Discrepancy {
  double phi_center, psi_center;
  double count;
};

struct CompareResult {
  double score;  // fraction of observed mass in feasible cells
  std::vector<Discrepancy> discrepancies;  // populated-but-infeasible, by count
};

CompareResult compare(const RamaMap& observed, const RamaMap& feasible);

enum class MapFormat { Csv, Pgm };

/// CSV: phi_center,psi_center,value rows. PGM: binary P5, value-scaled 8-bit,
/// rows from high psi to low, columns from low phi to high.
std::string export_map(const RamaMap& m, MapFormat format);

RamaMap import_map_csv(const std::string& text);

}  // namespace peppy
