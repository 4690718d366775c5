// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "peppy/fab.hpp"
#include "peppy/geometry.hpp"
#include "peppy/pdb.hpp"

using namespace peppy;

namespace {

const char* kTwoAtoms =
    "ATOM      1  N   ALA A   1       0.000   0.000   0.000  1.00  0.00           N\n"
    "ATOM      2  CA  ALA A   1       1.458   0.000   0.000  1.00  0.00           C\n";

std::string fixture(const std::string& name) {
  return std::string(PEPPY_FIXTURES_DIR) + "/" + name;
}

Conformation random_conformation(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-180.0, 180.0);
  Conformation c;
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  for (int i = 1; i < n; ++i) c.phi[i] = u(rng);
  for (int i = 0; i + 1 < n; ++i) c.psi[i] = u(rng);
  return c;
}

}  // namespace

TEST_CASE("parse well-formed ATOM records") {
  const auto s = parse_pdb(std::string(kTwoAtoms), "two");
  REQUIRE(s.records.size() == 2);
  CHECK(s.records[0].name == "N");
  CHECK(s.records[0].res_name == "ALA");
  CHECK(s.records[0].chain_id == 'A');
  CHECK(s.records[1].pos.x == doctest::Approx(1.458));
  CHECK(s.chains() == std::vector<char>{'A'});
}

TEST_CASE("malformed coordinate reports the line number") {
  const std::string text =
      "REMARK some header\n"
      "ATOM      1  N   ALA A   1      12.3x4   0.000   0.000  1.00  0.00           N\n";
  try {
    parse_pdb(text, "bad");
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("empty input raises EmptyStructure") {
  CHECK_THROWS_AS(parse_pdb(std::string("REMARK nothing here\nEND\n"), "empty"), EmptyStructure);
}

TEST_CASE("HETATM and later MODELs are skipped") {
  const std::string text =
      "MODEL        1\n" +
      std::string(kTwoAtoms) +
      "HETATM    3  O   HOH A 101       5.000   5.000   5.000  1.00  0.00           O\n"
      "ENDMDL\n"
      "MODEL        2\n"
      "ATOM      4  N   GLY A   2       9.000   9.000   9.000  1.00  0.00           N\n"
      "ENDMDL\n";
  const auto s = parse_pdb(text, "models");
  CHECK(s.records.size() == 2);
}

TEST_CASE("alternate locations resolve by occupancy") {
  const std::string text =
      "ATOM      1  N  AALA A   1       0.000   0.000   0.000  0.40  0.00           N\n"
      "ATOM      2  N  BALA A   1       9.000   0.000   0.000  0.60  0.00           N\n"
      "ATOM      3  CA  ALA A   1       1.458   0.000   0.000  1.00  0.00           C\n"
      "ATOM      4  C   ALA A   1       2.000   1.400   0.000  1.00  0.00           C\n"
      "ATOM      5  O   ALA A   1       3.200   1.600   0.000  1.00  0.00           O\n";
  const auto trace = extract_backbone(parse_pdb(text, "altloc"), 'A');
  REQUIRE(trace.residues.size() == 1);
  CHECK(trace.residues[0].n.x == doctest::Approx(9.0));
}

TEST_CASE("extract_backbone drops incomplete residues and splits the trace") {
  const auto topo = build_topology("AAA");
  const auto conf = canonical_conformation("antiparallel_beta", 3);
  const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
  std::string text = write_pdb(sites, topo);
  // remove residue 2's CA line
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find(" CA  ALA A   2") == std::string::npos) out << line << "\n";
  const auto trace = extract_backbone(parse_pdb(out.str(), "split"), 'A');
  CHECK(trace.residues.size() == 2);
  CHECK(trace.dropped_residues == 1);
  CHECK(trace.n_segments() == 2);
  CHECK(!trace.unbroken());

  const auto conf2 = conformation_from_trace(trace);
  CHECK(!conf2.phi[0].has_value());
  CHECK(!conf2.psi[0].has_value());  // break between the two kept residues
  CHECK(!conf2.phi[1].has_value());
}

TEST_CASE("missing chain raises UnknownChain") {
  CHECK_THROWS_AS(extract_backbone(parse_pdb(std::string(kTwoAtoms), "x"), 'B'), UnknownChain);
}

TEST_CASE("one complete residue forms a single-residue trace") {
  const auto topo = build_topology("A");
  const auto sites = forward_kinematics(topo, default_backbone_geometry(),
                                        canonical_conformation("alpha_helix", 1));
  const auto trace = extract_backbone(parse_pdb(write_pdb(sites, topo), "one"), 'A');
  CHECK(trace.residues.size() == 1);
  CHECK(trace.unbroken());
  CHECK_THROWS_AS(conformation_from_trace(trace), ChainTooShort);
}

TEST_CASE("compute_dihedral conventions") {
  CHECK(compute_dihedral({1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 1, 1}) ==
        doctest::Approx(-90.0));
  // planar cis is zero
  CHECK(compute_dihedral({1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {1, 1, 0}) ==
        doctest::Approx(0.0));
  // planar trans wraps to -180
  CHECK(compute_dihedral({1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {-1, 1, 0}) ==
        doctest::Approx(-180.0));
  CHECK_THROWS_AS(compute_dihedral({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 1, 0}),
                  DegenerateDihedral);
  CHECK_THROWS_AS(compute_dihedral({0, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 1, 1}),
                  DegenerateDihedral);
}

TEST_CASE("dihedral reversal flips the sign") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int done = 0;
  while (done < 200) {
    const Vec3 p1{u(rng), u(rng), u(rng)}, p2{u(rng), u(rng), u(rng)},
        p3{u(rng), u(rng), u(rng)}, p4{u(rng), u(rng), u(rng)};
    try {
      const double a = compute_dihedral(p1, p2, p3, p4);
      const double b = compute_dihedral(p4, p3, p2, p1);
      CHECK(std::abs(angle_diff(a, -b)) < 1e-9);
      ++done;
    } catch (const DegenerateDihedral&) {
    }
  }
}

TEST_CASE("dihedrals are rigid-motion invariant") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Vec3 p1{1.3, 0.2, -0.5}, p2{0, 0, 0}, p3{0.4, 1.2, 0.1}, p4{1.1, 1.8, 1.0};
  const double base = compute_dihedral(p1, p2, p3, p4);
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
    const Vec3 e1 = a.normalized();
    const Vec3 e2 = (b - e1 * b.dot(e1)).normalized();
    const Vec3 e3 = e1.cross(e2);
    const Vec3 t{5 * u(rng), 5 * u(rng), 5 * u(rng)};
    auto apply = [&](const Vec3& p) {
      return Vec3{e1.x * p.x + e2.x * p.y + e3.x * p.z + t.x,
                  e1.y * p.x + e2.y * p.y + e3.y * p.z + t.y,
                  e1.z * p.x + e2.z * p.y + e3.z * p.z + t.z};
    };
    const double moved = compute_dihedral(apply(p1), apply(p2), apply(p3), apply(p4));
    CHECK(std::abs(angle_diff(moved, base)) < 1e-9);
  }
}

TEST_CASE("conformation_from_trace termini") {
  const auto topo = build_topology("AA");
  const auto conf = canonical_conformation("alpha_helix", 2);
  const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
  const auto c = conformation_from_trace(trace_from_sites(topo, sites));
  CHECK(!c.phi[0].has_value());
  CHECK(c.psi[0].has_value());
  CHECK(c.phi[1].has_value());
  CHECK(!c.psi[1].has_value());
}

TEST_CASE("PDB text round trip stays within the quantization bound") {
  // 3-decimal coordinates bound the dihedral error near 0.15 degrees
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> len(4, 16);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = len(rng);
    const auto topo = build_topology(std::string(n, 'A'));
    const auto conf = random_conformation(n, rng);
    const auto sites = forward_kinematics(topo, default_backbone_geometry(), conf);
    const auto trace = extract_backbone(parse_pdb(write_pdb(sites, topo), "rt"), 'A');
    CHECK(sequence_from_trace(trace) == std::string(n, 'A'));
    const auto back = conformation_from_trace(trace);
    for (int i = 0; i < n; ++i) {
      if (conf.phi[i]) worst = std::max(worst, std::abs(angle_diff(*conf.phi[i], *back.phi[i])));
      if (conf.psi[i]) worst = std::max(worst, std::abs(angle_diff(*conf.psi[i], *back.psi[i])));
    }
  }
  CHECK(worst < 0.25);
}

TEST_CASE("2ZTA chain B fixture") {
  const auto raw = parse_pdb_file(fixture("2zta_b_fragment.pdb"));
  CHECK(raw.records.size() > 60);
  const auto trace = extract_backbone(raw, 'B');
  REQUIRE(trace.residues.size() == 15);
  CHECK(trace.unbroken());
  CHECK(sequence_from_trace(trace).rfind("KNYHLENEVARLKKL", 0) == 0);
  CHECK(trace.residues.front().seq == 14);

  const auto conf = conformation_from_trace(trace);
  for (int i = 1; i + 1 < 15; ++i) {
    REQUIRE(conf.phi[i].has_value());
    REQUIRE(conf.psi[i].has_value());
    CHECK(*conf.phi[i] > -90);
    CHECK(*conf.phi[i] < -30);
    CHECK(*conf.psi[i] > -70);
    CHECK(*conf.psi[i] < -20);
  }
}

TEST_CASE("1FSD fixture parses as one 28-residue chain") {
  const auto raw = parse_pdb_file(fixture("1fsd.pdb"));
  const auto trace = extract_backbone(raw, 'A');
  CHECK(trace.residues.size() == 28);
  CHECK(trace.unbroken());
  CHECK(sequence_from_trace(trace) == "QQYTAKIKGRTFRNEKELRDFIEKFKGR");
}
