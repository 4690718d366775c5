// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/fold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace peppy {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kHbondRampWidth = 0.25;  // A, smooth fade at the range boundary

double smootherstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}
double smootherstep_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (t - 1.0) * (t - 1.0);
}
}  // namespace

void EnergyParams::validate() const {
  if (detent_strength < 0 || clash_stiffness < 0 || hbond_strength < 0)
    throw ConfigError("energy strengths must be >= 0");
  if (!(detent_width_deg > 0)) throw ConfigError("detent width must be > 0");
  if (!(hbond_range > 0)) throw ConfigError("hbond range must be > 0");
}

DetentTable DetentTable::from_canonical(const CanonicalTable& t) {
  const auto det = t.detents();
  if (det.size() != 2)
    throw ConfigError("canonical table must flag exactly 2 detent conformations, found " +
                      std::to_string(det.size()));
  return DetentTable{{{{det[0]->phi, det[0]->psi}, {det[1]->phi, det[1]->psi}}}};
}

EnergyModel::EnergyModel(const ChainTopology& t, const BackboneGeometry& g,
                         const PhysicalScale& s, const EnergyParams& p, const DetentTable& d)
    : topo_(t), geom_(g), scale_(s), params_(p), detents_(d) {
  params_.validate();
  nonbonded_ = nonbonded_pairs(topo_);
  pair_threshold_.reserve(nonbonded_.size());
  for (auto [i, j] : nonbonded_)
    pair_threshold_.push_back(scale_.radius_factor *
                              (scale_.radius_of(topo_, i) + scale_.radius_of(topo_, j)));
  const int n = topo_.n_residues();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) >= 3) hbond_residue_pairs_.emplace_back(i, j);
  downstream_.reserve(topo_.rotatable.size());
  for (const auto& rd : topo_.rotatable) {
    if (rd.kind == DihedralKind::Phi)
      downstream_.push_back({rd.residue * kAtomsPerResidue + static_cast<int>(AtomRole::HA), -1});
    else
      downstream_.push_back({(rd.residue + 1) * kAtomsPerResidue,
                             rd.residue * kAtomsPerResidue + static_cast<int>(AtomRole::O)});
  }
}

std::vector<double> EnergyModel::angle_vector(const Conformation& c) const {
  std::vector<double> v;
  v.reserve(topo_.rotatable.size());
  for (const auto& rd : topo_.rotatable) {
    const auto& slot =
        rd.kind == DihedralKind::Phi ? c.phi[static_cast<size_t>(rd.residue)]
                                     : c.psi[static_cast<size_t>(rd.residue)];
    if (!slot) throw ShapeMismatch("conformation missing a rotatable angle");
    v.push_back(*slot);
  }
  return v;
}

Conformation EnergyModel::conformation_from_angles(const std::vector<double>& angles) const {
  if (angles.size() != topo_.rotatable.size())
    throw ShapeMismatch("angle vector length mismatch");
  Conformation c;
  const int n = topo_.n_residues();
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  for (size_t k = 0; k < angles.size(); ++k) {
    const auto& rd = topo_.rotatable[k];
    const double a = wrap_angle(angles[k]);
    if (rd.kind == DihedralKind::Phi)
      c.phi[static_cast<size_t>(rd.residue)] = a;
    else
      c.psi[static_cast<size_t>(rd.residue)] = a;
  }
  return c;
}

void EnergyModel::eval(const Conformation& c, double* energy_out,
                       std::vector<double>* grad_out) const {
  if (c.n_residues() != topo_.n_residues())
    throw ShapeMismatch("conformation does not match topology");
  const size_t n_dih = topo_.rotatable.size();
  double E = 0.0;
  if (grad_out) grad_out->assign(n_dih, 0.0);

  // Detent wells, separable per dihedral.
  const double sigma2 = params_.detent_width_deg * params_.detent_width_deg;
  for (size_t k = 0; k < n_dih; ++k) {
    const auto& rd = topo_.rotatable[k];
    const double theta = rd.kind == DihedralKind::Phi
                             ? *c.phi[static_cast<size_t>(rd.residue)]
                             : *c.psi[static_cast<size_t>(rd.residue)];
    const auto wells = rd.kind == DihedralKind::Phi ? detents_.phi_detents()
                                                    : detents_.psi_detents();
    for (double w : wells) {
      const double d = angle_diff(theta, w);
      const double g = std::exp(-d * d / (2.0 * sigma2));
      E -= params_.detent_strength * g;
      if (grad_out) (*grad_out)[k] += params_.detent_strength * (d / sigma2) * g;
    }
  }

  const AtomSites sites = forward_kinematics(topo_, geom_, c);
  const auto& pos = sites.positions;

  // Axis of each dihedral; gradient of a downstream point p is axis x (p - origin).
  std::vector<Vec3> axis_dir(n_dih), axis_pt(n_dih);
  if (grad_out) {
    for (size_t k = 0; k < n_dih; ++k) {
      const auto& q = topo_.rotatable[k].atoms;
      axis_pt[k] = pos[static_cast<size_t>(q[1])];
      axis_dir[k] = (pos[static_cast<size_t>(q[2])] - pos[static_cast<size_t>(q[1])]).normalized();
    }
  }
  auto moves = [&](size_t k, int atom) {
    return atom >= downstream_[k].suffix_start || atom == downstream_[k].extra;
  };
  // Accumulates d(distance)/d(angle_k) terms for the pair (i, j) into grad.
  auto add_pair_force = [&](int i, int j, double dE_dd) {
    const Vec3 u = (pos[static_cast<size_t>(i)] - pos[static_cast<size_t>(j)]);
    const double d = u.norm();
    if (d < 1e-12) return;
    for (size_t k = 0; k < n_dih; ++k) {
      const bool mi = moves(k, i), mj = moves(k, j);
      if (mi == mj) continue;
      const Vec3& p = pos[static_cast<size_t>(mi ? i : j)];
      double dd = (u / d).dot(axis_dir[k].cross(p - axis_pt[k]));
      if (!mi) dd = -dd;
      (*grad_out)[k] += dE_dd * dd * kDeg;  // per-degree
    }
  };

  // Hard-sphere overlap penalty.
  if (params_.clash_stiffness > 0) {
    for (size_t q = 0; q < nonbonded_.size(); ++q) {
      const auto [i, j] = nonbonded_[q];
      const double d = distance(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]);
      const double ov = pair_threshold_[q] - d;
      if (ov <= 0) continue;
      E += params_.clash_stiffness * ov * ov;
      if (grad_out) add_pair_force(i, j, -2.0 * params_.clash_stiffness * ov);
    }
  }

  // Hydrogen-bond reward with a smooth fade at the range boundary.
  if (params_.hbond_strength > 0) {
    const double lo = params_.hbond_range - kHbondRampWidth;
    for (auto [di, aj] : hbond_residue_pairs_) {
      const int ni = topo_.atom_index(di, AtomRole::N);
      const int oj = topo_.atom_index(aj, AtomRole::O);
      const double d = distance(pos[static_cast<size_t>(ni)], pos[static_cast<size_t>(oj)]);
      if (d >= params_.hbond_range) continue;
      if (d <= lo) {
        E -= params_.hbond_strength;
        continue;
      }
      const double t = (d - lo) / kHbondRampWidth;
      E -= params_.hbond_strength * (1.0 - smootherstep(t));
      if (grad_out)
        add_pair_force(ni, oj, params_.hbond_strength * smootherstep_deriv(t) / kHbondRampWidth);
    }
  }

  // Optional gravity placeholder: center-of-mass height above the lowest atom.
  if (params_.gravity_enabled && params_.gravity_coefficient != 0.0) {
    double zsum = 0, zmin = pos.front().z;
    size_t argmin = 0;
    for (size_t i = 0; i < pos.size(); ++i) {
      zsum += pos[i].z;
      if (pos[i].z < zmin) { zmin = pos[i].z; argmin = i; }
    }
    E += params_.gravity_coefficient * (zsum / static_cast<double>(pos.size()) - zmin);
    if (grad_out) {
      for (size_t k = 0; k < n_dih; ++k) {
        double dsum = 0;
        for (size_t i = 0; i < pos.size(); ++i)
          if (moves(k, static_cast<int>(i)))
            dsum += axis_dir[k].cross(pos[i] - axis_pt[k]).z;
        double dmin = moves(k, static_cast<int>(argmin))
                          ? axis_dir[k].cross(pos[argmin] - axis_pt[k]).z
                          : 0.0;
        (*grad_out)[k] += params_.gravity_coefficient *
                          (dsum / static_cast<double>(pos.size()) - dmin) * kDeg;
      }
    }
  }

  if (energy_out) *energy_out = E;
}

double EnergyModel::energy(const Conformation& c) const {
  double e = 0;
  eval(c, &e, nullptr);
  return e;
}

std::vector<double> EnergyModel::gradient(const Conformation& c) const {
  double e = 0;
  std::vector<double> g;
  eval(c, &e, &g);
  return g;
}

FoldResult EnergyModel::minimize(const Conformation& start, double tolerance, int max_iters,
                                 const TrajectorySink& sink) const {
  if (!(tolerance > 0)) throw ConfigError("tolerance must be > 0");
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");

  std::vector<double> x = angle_vector(start);
  for (double& a : x) a = wrap_angle(a);
  Conformation cx = conformation_from_angles(x);
  double E = energy(cx);

  FoldResult res;
  double step = 5.0;  // degrees of movement for the largest component
  constexpr double kMinStep = 1e-12, kMaxStep = 60.0;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    const std::vector<double> g = gradient(cx);
    double gn = 0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    res.grad_inf_norm = gn;
    if (gn <= tolerance) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= kMinStep) {
      std::vector<double> x2 = x;
      for (size_t k = 0; k < x.size(); ++k) x2[k] = wrap_angle(x[k] - step * g[k] / gn);
      Conformation c2 = conformation_from_angles(x2);
      const double E2 = energy(c2);
      if (E2 < E) {
        x = std::move(x2);
        cx = std::move(c2);
        E = E2;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // flat to machine precision
    step = std::min(step * 1.5, kMaxStep);
    if (sink) sink(iter + 1, E, gn, x);
  }
  if (!res.converged) {
    const std::vector<double> g = gradient(cx);
    double gn = 0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    res.grad_inf_norm = gn;
    res.converged = gn <= tolerance;
  }
  res.conformation = cx;
  res.energy = E;
  res.iterations = iter;
  return res;
}

double total_energy(const Conformation& c, const ChainTopology& t, const EnergyParams& p,
                    const PhysicalScale& s) {
  return EnergyModel(t, default_backbone_geometry(), s, p, DetentTable::from_canonical())
      .energy(c);
}

std::vector<double> gradient(const Conformation& c, const ChainTopology& t,
                             const EnergyParams& p, const PhysicalScale& s) {
  return EnergyModel(t, default_backbone_geometry(), s, p, DetentTable::from_canonical())
      .gradient(c);
}

FoldResult minimize(const Conformation& start, const ChainTopology& t, const EnergyParams& p,
                    const PhysicalScale& s, double tolerance, int max_iters,
                    const TrajectorySink& sink) {
  return EnergyModel(t, default_backbone_geometry(), s, p, DetentTable::from_canonical())
      .minimize(start, tolerance, max_iters, sink);
}

Conformation snap(const Conformation& c, const DetentTable& detents) {
  Conformation out = c;
  for (int i = 0; i < c.n_residues(); ++i) {
    const bool has_phi = c.phi[static_cast<size_t>(i)].has_value();
    const bool has_psi = c.psi[static_cast<size_t>(i)].has_value();
    if (!has_phi && !has_psi) continue;
    double best = 0;
    int best_k = 0;
    for (int k = 0; k < 2; ++k) {
      double d2 = 0;
      if (has_phi) {
        const double d = angle_diff(*c.phi[static_cast<size_t>(i)], detents.pairs[static_cast<size_t>(k)][0]);
        d2 += d * d;
      }
      if (has_psi) {
        const double d = angle_diff(*c.psi[static_cast<size_t>(i)], detents.pairs[static_cast<size_t>(k)][1]);
        d2 += d * d;
      }
      if (k == 0 || d2 < best) {
        best = d2;
        best_k = k;
      }
    }
    if (has_phi) out.phi[static_cast<size_t>(i)] = detents.pairs[static_cast<size_t>(best_k)][0];
    if (has_psi) out.psi[static_cast<size_t>(i)] = detents.pairs[static_cast<size_t>(best_k)][1];
  }
  return out;
}

}  // namespace peppy
