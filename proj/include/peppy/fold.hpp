// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "peppy/chain.hpp"
#include "peppy/geometry.hpp"

namespace peppy {

/// Dimensionless energy parameters; only the ratios matter. The magnet
/// calibration the physical model implies is an open placeholder, so these
/// defaults are tuning constants, not fitted values.
struct EnergyParams {
  double detent_strength = 1.0;     // k_d
  double detent_width_deg = 20.0;   // sigma
  double clash_stiffness = 100.0;   // k_c, per A^2
  double hbond_strength = 0.5;      // k_h
  double hbond_range = 3.5;         // A
  bool gravity_enabled = false;
  double gravity_coefficient = 0.0; // per A of center-of-mass height

  void validate() const;
  bool operator==(const EnergyParams&) const = default;
};

/// The two magnet-biased rest conformations, alpha first.
struct DetentTable {
  std::array<std::array<double, 2>, 2> pairs;  // {{phi,psi} alpha, {phi,psi} beta}

  std::array<double, 2> phi_detents() const { return {pairs[0][0], pairs[1][0]}; }
  std::array<double, 2> psi_detents() const { return {pairs[0][1], pairs[1][1]}; }

  static DetentTable from_canonical(const CanonicalTable& t = default_canonical_conformations());
};

struct FoldResult {
  Conformation conformation;
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_inf_norm = 0.0;
};

/// Called once per accepted minimization step.
using TrajectorySink =
    std::function<void(int iter, double energy, double grad_norm, const std::vector<double>& angles)>;

/// Precomputes exclusion lists and rigid-unit masks once per topology so the
/// minimizer can evaluate energy and analytic gradients repeatedly.
class EnergyModel {
 public:
  EnergyModel(const ChainTopology& t, const BackboneGeometry& g, const PhysicalScale& s,
              const EnergyParams& p, const DetentTable& detents);

  double energy(const Conformation& c) const;
  /// dE/d(angle), in energy units per degree, aligned with angle_vector order.
  std::vector<double> gradient(const Conformation& c) const;

  FoldResult minimize(const Conformation& start, double tolerance, int max_iters,
                      const TrajectorySink& sink = nullptr) const;

  /// Present angles in topology rotatable order (phi before psi, residue-major).
  std::vector<double> angle_vector(const Conformation& c) const;
  Conformation conformation_from_angles(const std::vector<double>& angles) const;

  const ChainTopology& topology() const { return topo_; }

 private:
  struct TermSums;
  void eval(const Conformation& c, double* energy_out, std::vector<double>* grad_out) const;

  ChainTopology topo_;
  BackboneGeometry geom_;
  PhysicalScale scale_;
  EnergyParams params_;
  DetentTable detents_;
  std::vector<std::pair<int, int>> nonbonded_;
  std::vector<double> pair_threshold_;
  std::vector<std::pair<int, int>> hbond_residue_pairs_;  // (donor, acceptor)
  struct Downstream { int suffix_start; int extra; };
  std::vector<Downstream> downstream_;  // per rotatable dihedral
};

double total_energy(const Conformation& c, const ChainTopology& t, const EnergyParams& p,
                    const PhysicalScale& s);
std::vector<double> gradient(const Conformation& c, const ChainTopology& t,
                             const EnergyParams& p, const PhysicalScale& s);
FoldResult minimize(const Conformation& start, const ChainTopology& t, const EnergyParams& p,
                    const PhysicalScale& s, double tolerance, int max_iters,
                    const TrajectorySink& sink = nullptr);

/// Replaces each present (phi, psi) by the nearest detent pair under wrapped
/// Euclidean distance; ties break toward the alpha pair.
Conformation snap(const Conformation& c,
                  const DetentTable& detents = DetentTable::from_canonical());

}  // namespace peppy
