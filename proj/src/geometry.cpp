// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <sstream>

namespace peppy {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

double PhysicalScale::radius_of(const ChainTopology& t, int atom) const {
  const Atom& a = t.atoms[static_cast<size_t>(atom)];
  if (a.role == AtomRole::SC) return t.sequence[static_cast<size_t>(a.residue)].side_chain_radius;
  auto it = vdw_radii.find(a.element);
  if (it == vdw_radii.end())
    throw ConfigError(std::string("no VdW radius for element '") + a.element + "'");
  return it->second;
}

void PhysicalScale::validate() const {
  if (!(inches_per_angstrom > 0)) throw ConfigError("inches_per_angstrom must be > 0");
  if (!(radius_factor > 0 && radius_factor <= 1))
    throw ConfigError("radius_factor must be in (0, 1]");
  for (const auto& [el, r] : vdw_radii)
    if (!(r > 0)) throw ConfigError(std::string("VdW radius for '") + el + "' must be > 0");
}

Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c,
                double r, double theta_deg, double tau_deg) {
  const double th = theta_deg * kDeg, ta = tau_deg * kDeg;
  const Vec3 e = (b - a).normalized();
  Vec3 vperp = (c - b) - e * (c - b).dot(e);
  const double vn = vperp.norm();
  if (vn < 1e-12) throw DegenerateDihedral("collinear reference frame in chain extension");
  const Vec3 m0 = vperp / vn;
  const Vec3 n0 = e.cross(m0);
  const Vec3 d = e * std::cos(th) + (m0 * std::cos(ta) - n0 * std::sin(ta)) * std::sin(th);
  return a + d * r;
}

AtomSites forward_kinematics(const ChainTopology& t, const BackboneGeometry& g,
                             const Conformation& c) {
  const int n = t.n_residues();
  if (c.n_residues() != n || static_cast<int>(c.psi.size()) != n)
    throw ShapeMismatch("conformation has " + std::to_string(c.n_residues()) +
                        " residues, topology has " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (c.phi[i].has_value() != (i > 0) || c.psi[i].has_value() != (i + 1 < n))
      throw ShapeMismatch("absent angles allowed only at the termini (residue " +
                          std::to_string(i + 1) + ")");
  }

  AtomSites s;
  s.positions.assign(t.atoms.size(), Vec3{});
  auto at = [&](int r, AtomRole a) -> Vec3& {
    return s.positions[static_cast<size_t>(t.atom_index(r, a))];
  };

  // Spine. Canonical frame for residue 1.
  at(0, AtomRole::N) = {0, 0, 0};
  at(0, AtomRole::CA) = {g.n_ca, 0, 0};
  at(0, AtomRole::C) = at(0, AtomRole::CA) +
      Vec3{std::cos(std::numbers::pi - g.ang_n_ca_c * kDeg),
           std::sin(std::numbers::pi - g.ang_n_ca_c * kDeg), 0.0} * g.ca_c;
  for (int i = 1; i < n; ++i) {
    at(i, AtomRole::N) = place_atom(at(i - 1, AtomRole::C), at(i - 1, AtomRole::CA),
                                    at(i - 1, AtomRole::N), g.c_n, g.ang_ca_c_n, *c.psi[i - 1]);
    at(i, AtomRole::CA) = place_atom(at(i, AtomRole::N), at(i - 1, AtomRole::C),
                                     at(i - 1, AtomRole::CA), g.n_ca, g.ang_c_n_ca, g.omega_deg);
    at(i, AtomRole::C) = place_atom(at(i, AtomRole::CA), at(i, AtomRole::N),
                                    at(i - 1, AtomRole::C), g.ca_c, g.ang_n_ca_c, *c.phi[i]);
  }

  // Decorations: amide O and H, then the alpha-carbon substituents.
  for (int i = 0; i < n; ++i) {
    // Terminal O keeps the amide-plane convention with a placeholder psi.
    const double psi_eff = (i + 1 < n) ? *c.psi[i] : 180.0;
    at(i, AtomRole::O) = place_atom(at(i, AtomRole::C), at(i, AtomRole::CA), at(i, AtomRole::N),
                                    g.c_o, g.ang_ca_c_o, psi_eff + 180.0);
    if (i == 0) {
      at(0, AtomRole::H) = place_atom(at(0, AtomRole::N), at(0, AtomRole::CA), at(0, AtomRole::C),
                                      g.n_h, g.ang_c_n_h, 180.0);
    } else {
      at(i, AtomRole::H) = place_atom(at(i, AtomRole::N), at(i - 1, AtomRole::C),
                                      at(i - 1, AtomRole::CA), g.n_h, g.ang_c_n_h, 0.0);
    }
    // Alpha-carbon substituents off the external bisector; SC takes the L side.
    const Vec3 u1 = (at(i, AtomRole::N) - at(i, AtomRole::CA)).normalized();
    const Vec3 u2 = (at(i, AtomRole::C) - at(i, AtomRole::CA)).normalized();
    const Vec3 w = ((u1 + u2) * -1.0).normalized();
    const Vec3 nrm = u1.cross(u2).normalized();
    constexpr double kTetra = 54.75 * kDeg;
    at(i, AtomRole::HA) =
        at(i, AtomRole::CA) + (w * std::cos(kTetra) - nrm * std::sin(kTetra)) * g.ca_ha;
    at(i, AtomRole::SC) =
        at(i, AtomRole::CA) + (w * std::cos(kTetra) + nrm * std::sin(kTetra)) * g.ca_sc;
  }
  return s;
}

std::vector<std::pair<int, int>> nonbonded_pairs(const ChainTopology& t, int max_bonds) {
  const int n_atoms = static_cast<int>(t.atoms.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n_atoms));
  for (auto [a, b] : t.bonds) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<std::pair<int, int>> out;
  std::vector<int> dist(static_cast<size_t>(n_atoms));
  for (int i = 0; i < n_atoms; ++i) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> q{i};
    dist[static_cast<size_t>(i)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (dist[static_cast<size_t>(u)] == max_bonds) continue;
      for (int v : adj[static_cast<size_t>(u)])
        if (dist[static_cast<size_t>(v)] < 0) {
          dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
          q.push_back(v);
        }
    }
    for (int j = i + 1; j < n_atoms; ++j)
      if (dist[static_cast<size_t>(j)] < 0) out.emplace_back(i, j);
  }
  return out;
}

ClashReport detect_clashes(const AtomSites& a, const ChainTopology& t, const PhysicalScale& s) {
  if (a.n_atoms() != static_cast<int>(t.atoms.size()))
    throw ShapeMismatch("sites not aligned with topology");
  ClashReport rep;
  std::vector<double> radius(t.atoms.size());
  for (size_t i = 0; i < t.atoms.size(); ++i) radius[i] = s.radius_of(t, static_cast<int>(i));
  for (auto [i, j] : nonbonded_pairs(t)) {
    const double d = distance(a.positions[static_cast<size_t>(i)],
                              a.positions[static_cast<size_t>(j)]);
    const double threshold = s.radius_factor * (radius[static_cast<size_t>(i)] +
                                                radius[static_cast<size_t>(j)]);
    if (d < threshold) {
      rep.clashes.push_back({i, j, d, threshold - d});
      rep.total_overlap += threshold - d;
    }
  }
  return rep;
}

double HBondSet::mean_distance() const {
  if (bonds.empty()) return 0.0;
  double s = 0;
  for (const auto& b : bonds) s += b.distance;
  return s / static_cast<double>(bonds.size());
}

double HBondSet::sd_distance() const {
  if (bonds.size() < 2) return 0.0;
  const double m = mean_distance();
  double s = 0;
  for (const auto& b : bonds) s += (b.distance - m) * (b.distance - m);
  return std::sqrt(s / static_cast<double>(bonds.size()));
}

HBondSet find_hbonds(const AtomSites& a, const ChainTopology& t, double cutoff) {
  if (!(cutoff > 0)) throw ConfigError("hbond cutoff must be > 0");
  if (a.n_atoms() != static_cast<int>(t.atoms.size()))
    throw ShapeMismatch("sites not aligned with topology");
  HBondSet set;
  const int n = t.n_residues();
  for (int i = 0; i < n; ++i) {      // donor N-H
    for (int j = 0; j < n; ++j) {    // acceptor C=O
      if (std::abs(i - j) < 3) continue;
      const Vec3& N = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::N))];
      const Vec3& H = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::H))];
      const Vec3& O = a.positions[static_cast<size_t>(t.atom_index(j, AtomRole::O))];
      const double d = distance(O, N);
      if (d > cutoff) continue;
      const Vec3 hn = N - H, ho = O - H;
      const double cosang = hn.dot(ho) / (hn.norm() * ho.norm());
      const double ang = std::acos(std::clamp(cosang, -1.0, 1.0)) / kDeg;
      if (ang < kHbondMinAngleDeg) continue;
      set.bonds.push_back({i, j, d});
    }
  }
  return set;
}

FeatureSpec FeatureSpec::parse(const std::string& text) {
  auto parse_pair = [&](const std::string& body) -> std::pair<int, int> {
    const auto dash = body.find('-');
    if (dash == std::string::npos) throw BadFeature("expected I-J in feature '" + text + "'");
    try {
      const int i = std::stoi(body.substr(0, dash));
      const int j = std::stoi(body.substr(dash + 1));
      return {i, j};
    } catch (const std::exception&) {
      throw BadFeature("bad indices in feature '" + text + "'");
    }
  };
  FeatureSpec f{FeatureKind::HelixSpan};
  if (text == "span") {
    f.kind = FeatureKind::HelixSpan;
  } else if (text == "hbonds") {
    f.kind = FeatureKind::HbondStats;
  } else if (text.rfind("ca:", 0) == 0) {
    f.kind = FeatureKind::CaPair;
    std::tie(f.i, f.j) = parse_pair(text.substr(3));
  } else if (text.rfind("n:", 0) == 0) {
    f.kind = FeatureKind::NPair;
    std::tie(f.i, f.j) = parse_pair(text.substr(2));
  } else if (text.rfind("atoms:", 0) == 0) {
    f.kind = FeatureKind::AtomPair;
    std::tie(f.i, f.j) = parse_pair(text.substr(6));
  } else {
    throw BadFeature("unknown feature '" + text + "'");
  }
  return f;
}

std::string FeatureSpec::str() const {
  switch (kind) {
    case FeatureKind::HelixSpan: return "span";
    case FeatureKind::HbondStats: return "hbonds";
    case FeatureKind::CaPair: return "ca:" + std::to_string(i) + "-" + std::to_string(j);
    case FeatureKind::NPair: return "n:" + std::to_string(i) + "-" + std::to_string(j);
    case FeatureKind::AtomPair: return "atoms:" + std::to_string(i) + "-" + std::to_string(j);
  }
  return "?";
}

Measurement measure(const AtomSites& a, const ChainTopology& t, const FeatureSpec& feature,
                    const PhysicalScale& s) {
  Measurement m;
  m.feature = feature.str();
  const int n = t.n_residues();
  auto residue_atom = [&](int res1, AtomRole role) -> const Vec3& {
    if (res1 < 1 || res1 > n)
      throw BadFeature("residue index " + std::to_string(res1) + " out of range 1.." +
                       std::to_string(n));
    return a.positions[static_cast<size_t>(t.atom_index(res1 - 1, role))];
  };
  switch (feature.kind) {
    case FeatureKind::HelixSpan:
      m.values.push_back(distance(residue_atom(1, AtomRole::CA), residue_atom(n, AtomRole::CA)));
      break;
    case FeatureKind::CaPair:
      m.values.push_back(distance(residue_atom(feature.i, AtomRole::CA),
                                  residue_atom(feature.j, AtomRole::CA)));
      break;
    case FeatureKind::NPair:
      m.values.push_back(distance(residue_atom(feature.i, AtomRole::N),
                                  residue_atom(feature.j, AtomRole::N)));
      break;
    case FeatureKind::AtomPair: {
      const int total = static_cast<int>(t.atoms.size());
      if (feature.i < 1 || feature.i > total || feature.j < 1 || feature.j > total)
        throw BadFeature("atom index out of range 1.." + std::to_string(total));
      m.values.push_back(distance(a.positions[static_cast<size_t>(feature.i - 1)],
                                  a.positions[static_cast<size_t>(feature.j - 1)]));
      break;
    }
    case FeatureKind::HbondStats: {
      for (const auto& hb : find_hbonds(a, t).bonds) m.values.push_back(hb.distance);
      break;
    }
  }
  m.n = static_cast<int>(m.values.size());
  if (m.n > 0) {
    double sum = 0;
    for (double v : m.values) sum += v;
    m.mean = sum / m.n;
    double var = 0;
    for (double v : m.values) var += (v - m.mean) * (v - m.mean);
    m.sd = m.n > 1 ? std::sqrt(var / m.n) : 0.0;
  }
  m.value_angstrom = m.mean;
  m.value_inch = s.to_physical(m.mean);
  return m;
}

std::string measurements_to_csv(const std::vector<Measurement>& rows) {
  std::ostringstream os;
  os << "feature,value_angstrom,value_inch,n,mean,sd\n";
  char buf[256];
  for (const auto& m : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%d,%.6f,%.6f\n", m.feature.c_str(),
                  m.value_angstrom, m.value_inch, m.n, m.mean, m.sd);
    os << buf;
  }
  return os.str();
}

}  // namespace peppy
