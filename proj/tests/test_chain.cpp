// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "peppy/chain.hpp"

using namespace peppy;

TEST_CASE("residue lookup by one- and three-letter codes") {
  CHECK(lookup_residue("A").three_letter == "ALA");
  CHECK(lookup_residue("A").side_chain_class == SideChainClass::Methyl);
  CHECK(lookup_residue("GLY").one_letter == 'G');
  CHECK(lookup_residue("GLY").side_chain_class == SideChainClass::Hydrogen);
  CHECK(lookup_residue("gly").one_letter == 'G');
  CHECK(lookup_residue("w").three_letter == "TRP");
  CHECK_THROWS_AS(lookup_residue("Z"), UnknownResidue);
  CHECK_THROWS_AS(lookup_residue("XYZ"), UnknownResidue);
  CHECK_THROWS_AS(lookup_residue(""), UnknownResidue);
}

TEST_CASE("canonical table matches the standard amino-acid code pairs") {
  // independent reference: the 20 standard one<->three letter assignments
  const std::pair<char, const char*> reference[] = {
      {'A', "ALA"}, {'R', "ARG"}, {'N', "ASN"}, {'D', "ASP"}, {'C', "CYS"},
      {'Q', "GLN"}, {'E', "GLU"}, {'G', "GLY"}, {'H', "HIS"}, {'I', "ILE"},
      {'L', "LEU"}, {'K', "LYS"}, {'M', "MET"}, {'F', "PHE"}, {'P', "PRO"},
      {'S', "SER"}, {'T', "THR"}, {'W', "TRP"}, {'Y', "TYR"}, {'V', "VAL"}};
  CHECK(default_residue_table().entries().size() == 20);
  for (const auto& [one, three] : reference) {
    const ResidueSpec& spec = lookup_residue(std::string(three));
    CHECK(spec.one_letter == one);
    CHECK(lookup_residue(std::string(1, one)).three_letter == three);
    if (one != 'G') CHECK(spec.side_chain_radius > 0);
  }
}

TEST_CASE("residue table rejects duplicates and bad radii") {
  auto entries = default_residue_table().entries();
  entries[3].one_letter = 'A';
  CHECK_THROWS_AS(ResidueTable{entries}, ConfigError);
  auto entries2 = default_residue_table().entries();
  entries2[5].side_chain_radius = 0.0;
  CHECK_THROWS_AS(ResidueTable{entries2}, ConfigError);
}

TEST_CASE("topology counting") {
  const auto t1 = build_topology("A");
  CHECK(t1.atoms.size() == 7);
  CHECK(t1.rotatable.empty());

  const auto t3 = build_topology("AAA");
  CHECK(t3.atoms.size() == 21);
  CHECK(t3.rotatable.size() == 4);

  const auto t13 = build_topology("AAAAAAAAAAAAA");
  CHECK(t13.atoms.size() == 91);
  CHECK(t13.rotatable.size() == 24);

  CHECK_THROWS_AS(build_topology(""), EmptyChain);
  CHECK_THROWS_AS(build_topology("AZA"), UnknownResidue);
}

TEST_CASE("atom and dihedral counts for all lengths up to 50") {
  for (int n = 1; n <= 50; ++n) {
    const auto t = build_topology(std::string(n, 'G'));
    CHECK(t.atoms.size() == static_cast<size_t>(7 * n));
    CHECK(t.rotatable.size() == static_cast<size_t>(2 * (n - 1)));
  }
}

TEST_CASE("topology is deterministic") {
  const auto a = build_topology("ACDEFGHIKLMNPQRSTVWY");
  const auto b = build_topology("ACDEFGHIKLMNPQRSTVWY");
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(a.atoms[i].residue == b.atoms[i].residue);
    CHECK(a.atoms[i].role == b.atoms[i].role);
    CHECK(a.atoms[i].element == b.atoms[i].element);
  }
  CHECK(a.bonds == b.bonds);
}

TEST_CASE("dihedral quadruples follow the backbone definition") {
  std::mt19937 rng(99);
  const std::string alphabet = "ACDEFGHIKLMNPQRSTVWY";
  std::uniform_int_distribution<int> len(2, 30);
  std::uniform_int_distribution<int> pick(0, 19);
  for (int trial = 0; trial < 20; ++trial) {
    std::string seq;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) seq.push_back(alphabet[static_cast<size_t>(pick(rng))]);
    const auto t = build_topology(seq);
    int phis = 0, psis = 0;
    for (const auto& rd : t.rotatable) {
      const int i = rd.residue;
      if (rd.kind == DihedralKind::Phi) {
        ++phis;
        CHECK(rd.atoms == std::array<int, 4>{t.atom_index(i - 1, AtomRole::C),
                                             t.atom_index(i, AtomRole::N),
                                             t.atom_index(i, AtomRole::CA),
                                             t.atom_index(i, AtomRole::C)});
      } else {
        ++psis;
        CHECK(rd.atoms == std::array<int, 4>{t.atom_index(i, AtomRole::N),
                                             t.atom_index(i, AtomRole::CA),
                                             t.atom_index(i, AtomRole::C),
                                             t.atom_index(i + 1, AtomRole::N)});
      }
    }
    CHECK(phis == n - 1);
    CHECK(psis == n - 1);
  }
}

TEST_CASE("bond graph is connected and local") {
  const auto t = build_topology("GAGAGA");
  std::vector<std::set<int>> adj(t.atoms.size());
  for (auto [a, b] : t.bonds) {
    CHECK(std::abs(t.atoms[static_cast<size_t>(a)].residue -
                   t.atoms[static_cast<size_t>(b)].residue) <= 1);
    adj[static_cast<size_t>(a)].insert(b);
    adj[static_cast<size_t>(b)].insert(a);
  }
  std::set<int> seen{0};
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<size_t>(u)])
      if (seen.insert(v).second) stack.push_back(v);
  }
  CHECK(seen.size() == t.atoms.size());
}

TEST_CASE("backbone geometry invariants are enforced") {
  BackboneGeometry g;
  CHECK_NOTHROW(g.validate());
  g.omega_deg = 179.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = BackboneGeometry{};
  g.n_ca = 2.5;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = BackboneGeometry{};
  g.ang_n_ca_c = 85.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("canonical conformations") {
  const auto c = canonical_conformation("alpha_helix", 13);
  REQUIRE(c.n_residues() == 13);
  CHECK(!c.phi[0].has_value());
  CHECK(!c.psi[12].has_value());
  for (int i = 1; i < 13; ++i) CHECK(*c.phi[static_cast<size_t>(i)] == doctest::Approx(-57));
  for (int i = 0; i < 12; ++i) CHECK(*c.psi[static_cast<size_t>(i)] == doctest::Approx(-47));

  const auto single = canonical_conformation("alpha_helix", 1);
  CHECK(!single.phi[0].has_value());
  CHECK(!single.psi[0].has_value());

  CHECK_THROWS_AS(canonical_conformation("spiral", 5), UnknownConformation);

  for (const char* name : {"alpha_helix", "three_ten_helix", "pi_helix", "parallel_beta",
                           "antiparallel_beta", "beta_turn_I", "beta_turn_II"})
    CHECK_NOTHROW(canonical_conformation(name, 4));
}

TEST_CASE("turns place the two-pair pattern centrally with extended flanks") {
  const auto c = canonical_conformation("beta_turn_I", 6);
  CHECK(*c.phi[2] == doctest::Approx(-60));
  CHECK(*c.psi[2] == doctest::Approx(-30));
  CHECK(*c.phi[3] == doctest::Approx(-90));
  CHECK(*c.psi[3] == doctest::Approx(0));
  CHECK(*c.phi[1] == doctest::Approx(-139));
  CHECK(*c.psi[0] == doctest::Approx(135));
  CHECK(*c.phi[5] == doctest::Approx(-139));
  CHECK(*c.psi[4] == doctest::Approx(135));
}

TEST_CASE("the two detent conformations are flagged") {
  const auto det = default_canonical_conformations().detents();
  REQUIRE(det.size() == 2);
  CHECK(det[0]->name == "alpha_helix");
  CHECK(det[1]->name == "antiparallel_beta");
}
