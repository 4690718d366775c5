// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "peppy/pdb.hpp"
#include "peppy/rama.hpp"

using namespace peppy;

namespace {
std::string fixture(const std::string& name) {
  return std::string(PEPPY_FIXTURES_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("grid bookkeeping") {
  RamaMap::check_bin_width(5);
  CHECK_THROWS_AS(RamaMap::check_bin_width(7), BadBinning);
  CHECK_THROWS_AS(RamaMap::check_bin_width(0), BadBinning);

  RamaMap m;
  m.bin_width = 5;
  m.cells.assign(72 * 72, 0.0);
  CHECK(m.bins() == 72);
  CHECK(m.bin_of(-180.0) == 0);
  CHECK(m.bin_of(179.9) == 71);
  CHECK(m.bin_of(180.0) == 0);  // wraps
  CHECK(m.center_of(0) == doctest::Approx(-177.5));
  CHECK(m.center_of(71) == doctest::Approx(177.5));
}

TEST_CASE("feasibility map marks the canonical cells") {
  const auto map = feasibility_map("AAA", PhysicalScale{}, 10);
  CHECK(map.bins() == 36);
  auto cell = [&](double a, double b) { return map.at(map.bin_of(a), map.bin_of(b)); };
  CHECK(cell(-57, -47) == 1.0);    // alpha detent
  CHECK(cell(-119, 113) == 1.0);   // parallel beta
  CHECK(cell(-139, 135) == 1.0);   // antiparallel beta detent
  CHECK(cell(0, 0) == 0.0);
  // a sane fraction of the plane is feasible at 0.7
  const double frac = map.total() / (36.0 * 36.0);
  CHECK(frac > 0.2);
  CHECK(frac < 0.8);
  CHECK_THROWS_AS(feasibility_map("AAA", PhysicalScale{}, 11), BadBinning);
  CHECK_THROWS_AS(feasibility_map("AA", PhysicalScale{}, 10), Error);
}

TEST_CASE("feasible set shrinks monotonically with the radius factor") {
  RamaMap maps[3];
  const double factors[] = {0.6, 0.7, 0.8};
  for (int k = 0; k < 3; ++k) {
    PhysicalScale s;
    s.radius_factor = factors[k];
    maps[k] = feasibility_map("AAA", s, 30);
  }
  for (size_t i = 0; i < maps[0].cells.size(); ++i) {
    if (maps[1].cells[i] > 0) CHECK(maps[0].cells[i] > 0);
    if (maps[2].cells[i] > 0) CHECK(maps[1].cells[i] > 0);
  }
  CHECK(maps[0].total() > maps[2].total());
}

TEST_CASE("histogram counting and conservation") {
  Conformation c;
  c.phi = {std::nullopt, -57.0};
  c.psi = {-47.0, std::nullopt};
  // only residue... no residue has both phi and psi -> zero pairs
  const auto empty = histogram({c}, 10);
  CHECK(empty.total() == 0.0);

  Conformation c3;
  c3.phi = {std::nullopt, -57.0, -139.0};
  c3.psi = {-47.0, -47.0, std::nullopt};
  const auto one = histogram({c3}, 10);
  CHECK(one.total() == 1.0);
  CHECK(one.at(one.bin_of(-57), one.bin_of(-47)) == 1.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-180.0, 180.0);
  std::vector<Conformation> confs;
  int expected_pairs = 0;
  for (int k = 0; k < 10; ++k) {
    const int n = 3 + k;
    Conformation cc;
    cc.phi.assign(n, std::nullopt);
    cc.psi.assign(n, std::nullopt);
    for (int i = 1; i < n; ++i) cc.phi[i] = u(rng);
    for (int i = 0; i + 1 < n; ++i) cc.psi[i] = u(rng);
    expected_pairs += n - 2;
    confs.push_back(cc);
  }
  const auto h = histogram(confs, 10);
  CHECK(h.total() == doctest::Approx(expected_pairs));

  auto shuffled = confs;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto h2 = histogram(shuffled, 10);
  CHECK(h2.cells == h.cells);
}

TEST_CASE("compare scores and discrepancies") {
  const auto feasible = feasibility_map("AAA", PhysicalScale{}, 30);

  RamaMap inside;
  inside.bin_width = 30;
  inside.cells.assign(12 * 12, 0.0);
  inside.at(inside.bin_of(-55), inside.bin_of(-45)) = 7.0;
  CHECK(compare(inside, feasible).score == doctest::Approx(1.0));

  RamaMap outside = inside;
  outside.cells.assign(12 * 12, 0.0);
  outside.at(outside.bin_of(5), outside.bin_of(5)) = 3.0;
  const auto bad = compare(outside, feasible);
  CHECK(bad.score == doctest::Approx(0.0));
  REQUIRE(bad.discrepancies.size() == 1);
  CHECK(bad.discrepancies[0].count == 3.0);

  // score is scale invariant
  RamaMap mixed = inside;
  mixed.at(mixed.bin_of(5), mixed.bin_of(5)) = 3.0;
  const double s1 = compare(mixed, feasible).score;
  for (auto& v : mixed.cells) v *= 13.0;
  CHECK(compare(mixed, feasible).score == doctest::Approx(s1));

  RamaMap narrow;
  narrow.bin_width = 10;
  narrow.cells.assign(36 * 36, 0.0);
  CHECK_THROWS_AS(compare(narrow, feasible), BadBinning);

  // empty observed map scores 1.0 by convention
  RamaMap none;
  none.bin_width = 30;
  none.cells.assign(12 * 12, 0.0);
  CHECK(compare(none, feasible).score == doctest::Approx(1.0));
}

TEST_CASE("CSV export and reimport round trip") {
  const auto map = feasibility_map("AAA", PhysicalScale{}, 5);
  const std::string csv = export_map(map, MapFormat::Csv);
  // header + one row per cell
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 72 * 72 + 1);
  const auto back = import_map_csv(csv);
  CHECK(back.bin_width == map.bin_width);
  CHECK(back.cells == map.cells);
  CHECK(back.mode == RamaMap::Mode::Feasibility);

  CHECK_THROWS_AS(import_map_csv("garbage"), BadFormat);
  CHECK_THROWS_AS(import_map_csv("phi_center,psi_center,value\n1,2\n"), BadFormat);
}

TEST_CASE("PGM export") {
  RamaMap zero;
  zero.bin_width = 30;
  zero.cells.assign(12 * 12, 0.0);
  const std::string pgm = export_map(zero, MapFormat::Pgm);
  const std::string header = "P5\n12 12\n255\n";
  REQUIRE(pgm.size() == header.size() + 144);
  CHECK(pgm.rfind(header, 0) == 0);
  for (size_t i = header.size(); i < pgm.size(); ++i) CHECK(pgm[i] == 0);

  RamaMap graded = zero;
  graded.at(3, 4) = 2.0;
  graded.at(5, 6) = 4.0;
  const std::string pgm2 = export_map(graded, MapFormat::Pgm);
  int maxv = 0;
  for (size_t i = header.size(); i < pgm2.size(); ++i)
    maxv = std::max(maxv, static_cast<int>(static_cast<unsigned char>(pgm2[i])));
  CHECK(maxv == 255);
}

TEST_CASE("2ZTA fixture lands in the alpha region and inside the feasible set") {
  const auto raw = parse_pdb_file(fixture("2zta_b_fragment.pdb"));
  const auto conf = conformation_from_trace(extract_backbone(raw, 'B'));
  const auto hist = histogram({conf}, 10);
  REQUIRE(hist.total() > 0);

  double in_box = 0;
  for (int i = 0; i < conf.n_residues(); ++i) {
    if (!conf.phi[i] || !conf.psi[i]) continue;
    if (*conf.phi[i] > -90 && *conf.phi[i] < -30 && *conf.psi[i] > -70 && *conf.psi[i] < -20)
      in_box += 1;
  }
  CHECK(in_box / hist.total() >= 0.8);

  const auto feasible = feasibility_map("AAA", PhysicalScale{}, 10);
  CHECK(compare(hist, feasible).score >= 0.9);
}
