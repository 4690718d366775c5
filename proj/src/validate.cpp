// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "peppy/fab.hpp"
#include "peppy/fold.hpp"
#include "peppy/geometry.hpp"
#include "peppy/pdb.hpp"
#include "peppy/rama.hpp"

namespace peppy {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

[[maybe_unused]] Conformation uniform_conformation(int n, double phi, double psi) {
  Conformation c;
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  for (int i = 1; i < n; ++i) c.phi[i] = phi;
  for (int i = 0; i + 1 < n; ++i) c.psi[i] = psi;
  return c;
}

Conformation random_conformation(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-180.0, 180.0);
  Conformation c;
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  for (int i = 1; i < n; ++i) c.phi[i] = wrap_angle(u(rng));
  for (int i = 0; i + 1 < n; ++i) c.psi[i] = wrap_angle(u(rng));
  return c;
}

double max_angle_error(const Conformation& a, const Conformation& b) {
  double worst = 0;
  for (int i = 0; i < a.n_residues(); ++i) {
    if (a.phi[i] && b.phi[i]) worst = std::max(worst, std::abs(angle_diff(*a.phi[i], *b.phi[i])));
    if (a.psi[i] && b.psi[i]) worst = std::max(worst, std::abs(angle_diff(*a.psi[i], *b.psi[i])));
  }
  return worst;
}

// Independent O(n^2) clash oracle: its own adjacency BFS and distance scan,
// sharing nothing with detect_clashes but the topology data.
std::vector<Clash> brute_force_clashes(const AtomSites& sites, const ChainTopology& t,
                                       const PhysicalScale& s) {
  const int n = static_cast<int>(t.atoms.size());
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : t.bonds) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto within_three_bonds = [&](int a, int b) {
    std::deque<std::pair<int, int>> q{{a, 0}};
    std::set<int> seen{a};
    while (!q.empty()) {
      auto [u, d] = q.front();
      q.pop_front();
      if (u == b) return true;
      if (d == 3) continue;
      for (int v : adj[u])
        if (!seen.count(v)) {
          seen.insert(v);
          q.push_back({v, d + 1});
        }
    }
    return false;
  };
  std::vector<Clash> out;
  for (int i = 0; i < n; ++i) {
    const double ri = t.atoms[i].role == AtomRole::SC
                          ? t.sequence[t.atoms[i].residue].side_chain_radius
                          : s.vdw_radii.at(t.atoms[i].element);
    for (int j = i + 1; j < n; ++j) {
      const double rj = t.atoms[j].role == AtomRole::SC
                            ? t.sequence[t.atoms[j].residue].side_chain_radius
                            : s.vdw_radii.at(t.atoms[j].element);
      const double dx = sites.positions[i].x - sites.positions[j].x;
      const double dy = sites.positions[i].y - sites.positions[j].y;
      const double dz = sites.positions[i].z - sites.positions[j].z;
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      const double threshold = s.radius_factor * (ri + rj);
      if (d < threshold && !within_three_bonds(i, j))
        out.push_back({i, j, d, threshold - d});
    }
  }
  return out;
}

void check_scale(std::vector<CheckResult>& out) {
  const PhysicalScale s;
  const double in = s.to_physical(18.362);
  const double an = s.from_physical(4.853);
  const bool p1 = std::abs(in - 6.750) <= 0.001;
  const bool p2 = std::abs(an - 13.202) <= 0.001;
  out.push_back({"1-scale",
                 fmt("18.362 A -> %.4f in (want 6.750 +/- 0.001); 4.853 in -> %.4f A "
                     "(want 13.202 +/- 0.001)",
                     in, an),
                 p1 && p2});
}

void check_helix_span(std::vector<CheckResult>& out) {
  const auto topo = build_topology("AAAAAAAAAAAAA");
  const auto conf = canonical_conformation("alpha_helix", 13);
  const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
  const PhysicalScale s;
  const auto m = measure(sites, topo, FeatureSpec{FeatureKind::HelixSpan}, s);
  const bool pass = m.value_angstrom >= 17.8 && m.value_angstrom <= 19.0 &&
                    m.value_inch >= 6.54 && m.value_inch <= 6.98;
  out.push_back({"2-helix-span",
                 fmt("CA(1)-CA(13) = %.3f A / %.3f in (want [17.8,19.0] A, [6.54,6.98] in)",
                     m.value_angstrom, m.value_inch),
                 pass});
}

void check_hbonds(std::vector<CheckResult>& out) {
  const auto topo = build_topology("AAAAAAAAAAAAA");
  const auto conf = canonical_conformation("alpha_helix", 13);
  const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
  const auto hb = find_hbonds(sites, topo);
  bool ladder = hb.bonds.size() == 9;
  std::set<std::pair<int, int>> expected;
  for (int j = 0; j < 9; ++j) expected.insert({j + 4, j});  // donor i+4 -> acceptor i
  for (const auto& b : hb.bonds)
    if (!expected.count({b.donor, b.acceptor})) ladder = false;
  const double mean = hb.mean_distance();
  const bool pass = ladder && mean >= 2.85 && mean <= 3.30;
  out.push_back({"3-hbond",
                 fmt("%zu hydrogen bonds (want exactly the 9 i+4->i pairs), mean O-N %.3f A "
                     "(want [2.85,3.30])",
                     hb.bonds.size(), mean),
                 pass});
}

void check_roundtrip(std::vector<CheckResult>& out) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> len(4, 20);
  double worst_direct = 0, worst_pdb = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    const auto topo = build_topology(std::string(n, 'A'));
    const auto conf = random_conformation(n, rng);
    const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
    const auto direct = conformation_from_trace(trace_from_sites(topo, sites));
    worst_direct = std::max(worst_direct, max_angle_error(conf, direct));
    const auto reparsed = parse_pdb(write_pdb(sites, topo), "roundtrip");
    const auto conf2 = conformation_from_trace(extract_backbone(reparsed, 'A'));
    worst_pdb = std::max(worst_pdb, max_angle_error(conf, conf2));
  }
  out.push_back({"4a-roundtrip-direct",
                 fmt("max angle error %.3g deg over 200 conformations (want <= 1e-6)",
                     worst_direct),
                 worst_direct <= 1e-6});
  out.push_back({"4b-roundtrip-pdb",
                 fmt("max angle error %.4f deg through PDB text (want <= 0.01; 3-decimal "
                     "coordinates bound this at ~0.1)",
                     worst_pdb),
                 worst_pdb <= 0.01});
}

void check_rama(std::vector<CheckResult>& out, const std::string& fixtures_dir) {
  PhysicalScale s;
  const auto map = feasibility_map("AAA", s, 10);
  auto cell = [&](double phi, double psi) { return map.at(map.bin_of(phi), map.bin_of(psi)); };
  const bool cells_ok = cell(-57, -47) > 0 && cell(-119, 113) > 0 && cell(-139, 135) > 0 &&
                        cell(0, 0) == 0;
  out.push_back({"5a-rama-cells",
                 fmt("alpha(-57,-47)=%s parallel(-119,113)=%s antiparallel(-139,135)=%s "
                     "origin(0,0)=%s (want feasible/feasible/feasible/infeasible)",
                     cell(-57, -47) > 0 ? "feasible" : "infeasible",
                     cell(-119, 113) > 0 ? "feasible" : "infeasible",
                     cell(-139, 135) > 0 ? "feasible" : "infeasible",
                     cell(0, 0) > 0 ? "feasible" : "infeasible"),
                 cells_ok});

  RamaMap coarse[3];
  const double factors[3] = {0.6, 0.7, 0.8};
  for (int k = 0; k < 3; ++k) {
    PhysicalScale sk;
    sk.radius_factor = factors[k];
    coarse[k] = feasibility_map("AAA", sk, 30);
  }
  bool monotone = true;
  int sizes[3] = {0, 0, 0};
  for (int k = 0; k < 3; ++k)
    sizes[k] = static_cast<int>(coarse[k].total());
  for (size_t c = 0; c < coarse[0].cells.size(); ++c) {
    if (coarse[1].cells[c] > 0 && coarse[0].cells[c] == 0) monotone = false;  // 0.7 ⊆ 0.6
    if (coarse[2].cells[c] > 0 && coarse[1].cells[c] == 0) monotone = false;  // 0.8 ⊆ 0.7
  }
  out.push_back({"5b-rama-monotone",
                 fmt("feasible cells at factor 0.6/0.7/0.8 = %d/%d/%d on the 12x12 grid "
                     "(want nested supersets)",
                     sizes[0], sizes[1], sizes[2]),
                 monotone && sizes[0] >= sizes[1] && sizes[1] >= sizes[2]});

  try {
    const auto raw = parse_pdb_file(fixtures_dir + "/2zta_b_fragment.pdb");
    const auto trace = extract_backbone(raw, 'B');
    const auto conf = conformation_from_trace(trace);
    const auto hist = histogram({conf}, 10);
    const auto cmp = compare(hist, map);
    out.push_back({"5c-rama-coverage",
                   fmt("2ZTA fragment observed-vs-feasible coverage %.3f over %d pairs "
                       "(want >= 0.9)",
                       cmp.score, static_cast<int>(hist.total())),
                   cmp.score >= 0.9});
  } catch (const std::exception& e) {
    out.push_back({"5c-rama-coverage", std::string("fixture error: ") + e.what(), false});
  }
}

void check_fold(std::vector<CheckResult>& out) {
  const auto topo = build_topology("AAAAAAAAAAAAA");
  const auto detent = canonical_conformation("alpha_helix", 13);
  const EnergyModel model(topo, default_backbone_geometry(), PhysicalScale{}, EnergyParams{},
                          DetentTable::from_canonical());
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> jitter(-15.0, 15.0);
  int good = 0;
  const int runs = 50;
  double worst_final = 0;
  for (int r = 0; r < runs; ++r) {
    Conformation start = detent;
    for (int i = 0; i < 13; ++i) {
      if (start.phi[i]) start.phi[i] = wrap_angle(*start.phi[i] + jitter(rng));
      if (start.psi[i]) start.psi[i] = wrap_angle(*start.psi[i] + jitter(rng));
    }
    const FoldResult res = model.minimize(start, 1e-4, 3000);
    const double err = max_angle_error(res.conformation, detent);
    worst_final = std::max(worst_final, err);
    if (res.converged && err <= 2.0) ++good;
  }
  out.push_back({"6a-fold-basin",
                 fmt("%d/%d perturbed starts returned within 2 deg of the alpha detent "
                     "(worst final offset %.3f deg; want 100%%)",
                     good, runs, worst_final),
                 good == runs});

  std::uniform_real_distribution<double> jit20(-20.0, 20.0);
  std::uniform_int_distribution<int> pick(0, 1);
  const DetentTable dt = DetentTable::from_canonical();
  const auto topo8 = build_topology("AAAAAAAA");
  const EnergyModel model8(topo8, default_backbone_geometry(), PhysicalScale{}, EnergyParams{},
                           dt);
  int tested = 0;
  double worst_rel = 0;
  const double h = 1e-4;
  while (tested < 100) {
    Conformation c;
    c.phi.assign(8, std::nullopt);
    c.psi.assign(8, std::nullopt);
    for (int i = 1; i < 8; ++i) c.phi[i] = wrap_angle(dt.pairs[pick(rng)][0] + jit20(rng));
    for (int i = 0; i + 1 < 8; ++i) c.psi[i] = wrap_angle(dt.pairs[pick(rng)][1] + jit20(rng));
    const auto sites = forward_kinematics(topo8, default_backbone_geometry(), c);
    if (!detect_clashes(sites, topo8, PhysicalScale{}).empty()) continue;
    ++tested;
    const auto ga = model8.gradient(c);
    auto angles = model8.angle_vector(c);
    for (size_t k = 0; k < angles.size(); ++k) {
      auto probe = angles;
      probe[k] = angles[k] + h;
      const double ep = model8.energy(model8.conformation_from_angles(probe));
      probe[k] = angles[k] - h;
      const double em = model8.energy(model8.conformation_from_angles(probe));
      const double gfd = (ep - em) / (2 * h);
      const double rel = std::abs(ga[k] - gfd) / std::max({std::abs(gfd), std::abs(ga[k]), 0.01});
      worst_rel = std::max(worst_rel, rel);
    }
  }
  out.push_back({"6b-fold-gradient",
                 fmt("analytic vs central-difference gradient: worst relative deviation %.3g "
                     "over 100 clash-free conformations (want <= 1e-5)",
                     worst_rel),
                 worst_rel <= 1e-5});
}

void check_fab(std::vector<CheckResult>& out) {
  // STL byte-length law and shell audits on three representative meshes.
  const PhysicalScale s;
  bool stl_ok = true, audit_ok = true;
  std::string stl_detail;
  {
    const auto topo1 = build_topology("A");
    const auto conf1 = canonical_conformation("alpha_helix", 1);
    const auto sites1 = forward_kinematics(topo1, default_backbone_geometry(), conf1);
    const auto topo13 = build_topology("AAAAAAAAAAAAA");
    const auto conf13 = canonical_conformation("alpha_helix", 13);
    const auto sites13 = forward_kinematics(topo13, default_backbone_geometry(), conf13);
    const TriMesh meshes[] = {icosphere({0, 0, 0}, 0.5, 1), mesh_model(sites1, topo1, s, 2),
                              mesh_model(sites13, topo13, s, 1)};
    for (const auto& m : meshes) {
      const std::string bytes = write_stl(m);
      if (bytes.size() != 84 + 50 * static_cast<size_t>(m.n_triangles())) stl_ok = false;
      if (!m.watertight() || !m.winding_consistent() || m.signed_volume() <= 0) audit_ok = false;
    }
    stl_detail = fmt("3 meshes (%d/%d/%d triangles): byte law 84+50T %s, watertight+winding %s",
                     meshes[0].n_triangles(), meshes[1].n_triangles(), meshes[2].n_triangles(),
                     stl_ok ? "holds" : "violated", audit_ok ? "pass" : "fail");
  }
  const TriMesh ball = icosphere({0, 0, 0}, 1.0, 3);
  const double vol = ball.signed_volume();
  const double analytic = 4.0 / 3.0 * 3.14159265358979323846;
  const double rel = std::abs(vol - analytic) / analytic;
  const bool vol_ok = rel <= 0.02;

  std::mt19937 rng(90210);
  std::uniform_int_distribution<int> len(1, 20);
  std::uniform_real_distribution<double> u(-180.0, 180.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::string alphabet = "ACDEFGHIKLMNPQRSTVWY";
  std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet.size()) - 1);
  bool pbm_ok = true;
  for (int trial = 0; trial < 100 && pbm_ok; ++trial) {
    const int n = len(rng);
    std::string seq;
    for (int i = 0; i < n; ++i) seq.push_back(alphabet[letter(rng)]);
    Conformation c = random_conformation(n, rng);
    PhysicalScale ps;
    ps.inches_per_angstrom = 0.25 + 0.25 * unit(rng);
    EnergyParams ep;
    ep.detent_strength = unit(rng) * 2;
    ep.hbond_strength = unit(rng);
    BioModel b = make_biomodel(seq, c, ps, ep, DetentTable::from_canonical(), "prop-" +
                               std::to_string(trial), "property-generated");
    if (unit(rng) < 0.3) b.extras_json = "{\"x_custom\":[1,2,3]}";
    if (unit(rng) < 0.3) {
      const auto topo = build_topology(seq);
      const auto sites = forward_kinematics(topo, default_backbone_geometry(), c);
      b.measurements.push_back(measure(sites, topo, FeatureSpec{FeatureKind::HelixSpan}, ps));
    }
    const BioModel back = read_pbm(write_pbm(b));
    if (!(back == b)) pbm_ok = false;
  }
  out.push_back({"7-fabrication",
                 stl_detail +
                     fmt("; icosphere(3) volume %.4f vs %.4f (rel %.4f, want <= 0.02); PBM "
                         "round trip identity on 100 models %s",
                         vol, analytic, rel, pbm_ok ? "holds" : "violated"),
                 stl_ok && audit_ok && vol_ok && pbm_ok});
}

void check_clash_oracle(std::vector<CheckResult>& out) {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> len(2, 50);
  const std::string alphabet = "ACDEFGHIKLMNPQRSTVWY";
  std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet.size()) - 1);
  bool equal = true;
  int pairs_checked = 0;
  for (int trial = 0; trial < 50 && equal; ++trial) {
    const int n = len(rng);
    std::string seq;
    for (int i = 0; i < n; ++i) seq.push_back(alphabet[letter(rng)]);
    const auto topo = build_topology(seq);
    const auto conf = random_conformation(n, rng);
    const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
    const PhysicalScale s;
    const auto fast = detect_clashes(sites, topo, s).clashes;
    const auto slow = brute_force_clashes(sites, topo, s);
    if (fast.size() != slow.size()) {
      equal = false;
      break;
    }
    for (size_t k = 0; k < fast.size(); ++k) {
      if (fast[k].a != slow[k].a || fast[k].b != slow[k].b ||
          std::abs(fast[k].distance - slow[k].distance) > 1e-12 ||
          std::abs(fast[k].overlap - slow[k].overlap) > 1e-12)
        equal = false;
    }
    pairs_checked += static_cast<int>(fast.size());
  }
  out.push_back({"8-clash-oracle",
                 fmt("detect_clashes vs independent brute force on 50 random chains up to 50 "
                     "residues: %s (%d clash pairs compared)",
                     equal ? "identical" : "MISMATCH", pairs_checked),
                 equal});
}

}  // namespace

std::vector<CheckResult> run_validation(const std::string& fixtures_dir,
                                        const std::string& only) {
  std::vector<CheckResult> all;
  if (only.empty() || only[0] == '1') check_scale(all);
  if (only.empty() || only[0] == '2') check_helix_span(all);
  if (only.empty() || only[0] == '3') check_hbonds(all);
  if (only.empty() || only[0] == '4') check_roundtrip(all);
  if (only.empty() || only[0] == '5') check_rama(all, fixtures_dir);
  if (only.empty() || only[0] == '6') check_fold(all);
  if (only.empty() || only[0] == '7') check_fab(all);
  if (only.empty() || only[0] == '8') check_clash_oracle(all);
  if (!only.empty()) {
    std::erase_if(all, [&](const CheckResult& r) { return r.id.rfind(only, 0) != 0; });
  }
  return all;
}

std::string format_validation_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ": " << r.detail << "\n";
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  os << results.size() - failed << "/" << results.size() << " checks passed\n";
  return os.str();
}

}  // namespace peppy
