// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/pdb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>

namespace peppy {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string field(const std::string& line, size_t col1, size_t col2) {
  // 1-based inclusive columns per the PDB format description
  if (line.size() < col1) return "";
  return line.substr(col1 - 1, std::min(col2, line.size()) - col1 + 1);
}

double parse_coord(const std::string& line, size_t col1, size_t col2, size_t line_no,
                   const char* what) {
  const std::string raw = strip(field(line, col1, col2));
  if (raw.empty()) throw MalformedRecord(line_no, std::string("missing ") + what);
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    throw MalformedRecord(line_no, std::string("bad ") + what + " field '" + raw + "'");
  }
  if (used != raw.size() || !std::isfinite(v))
    throw MalformedRecord(line_no, std::string("bad ") + what + " field '" + raw + "'");
  return v;
}

int parse_int(const std::string& line, size_t col1, size_t col2, size_t line_no,
              const char* what, int fallback = 0, bool required = false) {
  const std::string raw = strip(field(line, col1, col2));
  if (raw.empty()) {
    if (required) throw MalformedRecord(line_no, std::string("missing ") + what);
    return fallback;
  }
  try {
    return std::stoi(raw);
  } catch (const std::exception&) {
    throw MalformedRecord(line_no, std::string("bad ") + what + " field '" + raw + "'");
  }
}

}  // namespace

std::vector<char> RawStructure::chains() const {
  std::vector<char> out;
  for (const auto& r : records)
    if (std::find(out.begin(), out.end(), r.chain_id) == out.end()) out.push_back(r.chain_id);
  return out;
}

RawStructure parse_pdb(std::istream& in, const std::string& source_id) {
  RawStructure s;
  s.source_id = source_id;
  std::string line;
  size_t line_no = 0;
  int model_seen = 0;
  bool in_skipped_model = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string rec = field(line, 1, 6);
    if (rec == "MODEL ") {
      ++model_seen;
      in_skipped_model = model_seen > 1;
      continue;
    }
    if (rec == "ENDMDL") continue;
    if (in_skipped_model) continue;
    if (rec != "ATOM  ") continue;  // HETATM, ANISOU etc. skipped

    AtomRecord a;
    a.serial = parse_int(line, 7, 11, line_no, "serial");
    a.name = strip(field(line, 13, 16));
    a.altloc = line.size() >= 17 ? line[16] : ' ';
    a.res_name = strip(field(line, 18, 20));
    a.chain_id = line.size() >= 22 ? line[21] : ' ';
    a.res_seq = parse_int(line, 23, 26, line_no, "residue number", 0, true);
    a.icode = line.size() >= 27 ? line[26] : ' ';
    a.pos.x = parse_coord(line, 31, 38, line_no, "x coordinate");
    a.pos.y = parse_coord(line, 39, 46, line_no, "y coordinate");
    a.pos.z = parse_coord(line, 47, 54, line_no, "z coordinate");
    const std::string occ = strip(field(line, 55, 60));
    a.occupancy = occ.empty() ? 1.0 : std::stod(occ);
    a.element = strip(field(line, 77, 78));
    s.records.push_back(std::move(a));
  }
  if (s.records.empty()) throw EmptyStructure("no ATOM records in " +
                                              (source_id.empty() ? "input" : source_id));
  return s;
}

RawStructure parse_pdb(const std::string& text, const std::string& source_id) {
  std::istringstream is(text);
  return parse_pdb(is, source_id);
}

RawStructure parse_pdb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_pdb(in, path);
}

BackboneTrace extract_backbone(const RawStructure& s, char chain) {
  bool chain_found = false;
  // group by (res_seq, icode); altloc resolved by occupancy then first-seen
  std::map<std::pair<int, char>, std::map<std::string, AtomRecord>> residues;
  for (const auto& r : s.records) {
    if (r.chain_id != chain) continue;
    chain_found = true;
    auto& atoms = residues[{r.res_seq, r.icode}];
    auto it = atoms.find(r.name);
    if (it == atoms.end() || r.occupancy > it->second.occupancy) atoms[r.name] = r;
  }
  if (!chain_found) throw UnknownChain(std::string("no chain '") + chain + "' in " + s.source_id);

  BackboneTrace t;
  t.chain_id = chain;
  int segment = 0;
  bool gap_pending = false;
  Vec3 prev_c;
  for (const auto& [key, atoms] : residues) {
    const auto n = atoms.find("N"), ca = atoms.find("CA"), c = atoms.find("C"),
               o = atoms.find("O");
    if (n == atoms.end() || ca == atoms.end() || c == atoms.end() || o == atoms.end()) {
      ++t.dropped_residues;
      gap_pending = !t.residues.empty();
      continue;
    }
    TraceResidue res;
    res.name = n->second.res_name;
    res.seq = key.first;
    res.icode = key.second;
    res.n = n->second.pos;
    res.ca = ca->second.pos;
    res.c = c->second.pos;
    res.o = o->second.pos;
    if (!t.residues.empty()) {
      const bool broken = gap_pending || distance(prev_c, res.n) >= 2.0;
      if (broken) ++segment;
    }
    gap_pending = false;
    t.residues.push_back(res);
    t.segment_of.push_back(segment);
    prev_c = res.c;
  }
  if (t.residues.empty())
    throw EmptyStructure(std::string("chain '") + chain + "' has no backbone-complete residues");
  return t;
}

double compute_dihedral(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4) {
  const Vec3 b1 = p2 - p1, b2 = p3 - p2, b3 = p4 - p3;
  if (b1.norm() < 1e-9 || b2.norm() < 1e-9 || b3.norm() < 1e-9)
    throw DegenerateDihedral("coincident points");
  const Vec3 n1 = b1.cross(b2), n2 = b2.cross(b3);
  if (n1.norm() < 1e-9 || n2.norm() < 1e-9)
    throw DegenerateDihedral("collinear points");
  const double x = n1.dot(n2), y = n1.cross(n2).dot(b2.normalized());
  return wrap_angle(std::atan2(y, x) / (std::numbers::pi / 180.0));
}

Conformation conformation_from_trace(const BackboneTrace& t) {
  const int n = static_cast<int>(t.residues.size());
  if (n < 2) throw ChainTooShort("trace has " + std::to_string(n) + " residue(s), need >= 2");
  Conformation c;
  c.phi.assign(n, std::nullopt);
  c.psi.assign(n, std::nullopt);
  auto same_segment = [&](int a, int b) { return t.segment_of[a] == t.segment_of[b]; };
  for (int i = 0; i < n; ++i) {
    const TraceResidue& r = t.residues[static_cast<size_t>(i)];
    if (i > 0 && same_segment(i - 1, i))
      c.phi[i] = compute_dihedral(t.residues[static_cast<size_t>(i - 1)].c, r.n, r.ca, r.c);
    if (i + 1 < n && same_segment(i, i + 1))
      c.psi[i] = compute_dihedral(r.n, r.ca, r.c, t.residues[static_cast<size_t>(i + 1)].n);
  }
  return c;
}

std::string sequence_from_trace(const BackboneTrace& t, const ResidueTable& table) {
  std::string seq;
  seq.reserve(t.residues.size());
  for (const auto& r : t.residues) seq.push_back(table.lookup(r.name).one_letter);
  return seq;
}

BackboneTrace trace_from_sites(const ChainTopology& t, const AtomSites& a) {
  if (a.n_atoms() != static_cast<int>(t.atoms.size()))
    throw ShapeMismatch("sites not aligned with topology");
  BackboneTrace tr;
  tr.chain_id = 'A';
  for (int i = 0; i < t.n_residues(); ++i) {
    TraceResidue r;
    r.name = t.sequence[static_cast<size_t>(i)].three_letter;
    r.seq = i + 1;
    r.icode = ' ';
    r.n = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::N))];
    r.ca = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::CA))];
    r.c = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::C))];
    r.o = a.positions[static_cast<size_t>(t.atom_index(i, AtomRole::O))];
    tr.residues.push_back(r);
    tr.segment_of.push_back(0);
  }
  return tr;
}

}  // namespace peppy
