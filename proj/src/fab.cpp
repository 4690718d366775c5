// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/fab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace peppy {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
constexpr int kCylinderSegments = 16;
constexpr double kDetentRingFactor = 0.4;
constexpr double kCylinderRadiusFactor = 0.25;
}  // namespace

std::vector<MagnetSpec> magnet_layout(const ChainTopology& t, const DetentTable& detents,
                                      const PhysicalScale& s) {
  const BackboneGeometry& g = default_backbone_geometry();
  std::vector<MagnetSpec> out;
  const double ca_sphere_in =
      s.radius_factor * s.vdw_radii.at('C') * s.inches_per_angstrom;
  const double ring = kDetentRingFactor * ca_sphere_in;
  // One magnet per joint, on the joint ring at the primary (alpha) rest angle.
  for (size_t k = 0; k < t.rotatable.size(); ++k) {
    const auto& rd = t.rotatable[k];
    const double angle =
        (rd.kind == DihedralKind::Phi ? detents.pairs[0][0] : detents.pairs[0][1]) * kDeg;
    out.push_back({MagnetRole::Detent, static_cast<int>(k),
                   {ring * std::cos(angle), ring * std::sin(angle), 0.0},
                   Polarity::NOut, 2});
  }
  const double h_tip = (g.n_h + s.radius_factor * s.vdw_radii.at('H')) * s.inches_per_angstrom;
  const double o_tip = (g.c_o + s.radius_factor * s.vdw_radii.at('O')) * s.inches_per_angstrom;
  for (int i = 0; i < t.n_residues(); ++i) {
    out.push_back({MagnetRole::HbondDonor, i, {h_tip, 0.0, 0.0}, Polarity::NOut, 1});
    out.push_back({MagnetRole::HbondAcceptor, i, {o_tip, 0.0, 0.0}, Polarity::SOut, 1});
  }
  return out;
}

bool TriMesh::watertight() const {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tri : triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = tri[static_cast<size_t>(e)], b = tri[static_cast<size_t>((e + 1) % 3)];
      if (a == b) return false;
      edge_count[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  for (const auto& [edge, count] : edge_count)
    if (count != 2) return false;
  return true;
}

bool TriMesh::winding_consistent() const {
  // Each undirected edge must be traversed once in each direction.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& tri : triangles)
    for (int e = 0; e < 3; ++e)
      directed[{tri[static_cast<size_t>(e)], tri[static_cast<size_t>((e + 1) % 3)]}]++;
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    auto rev = directed.find({edge.second, edge.first});
    if (rev == directed.end() || rev->second != 1) return false;
  }
  return true;
}

double TriMesh::signed_volume() const {
  double v = 0;
  for (const auto& tri : triangles) {
    const Vec3& a = vertices[static_cast<size_t>(tri[0])];
    const Vec3& b = vertices[static_cast<size_t>(tri[1])];
    const Vec3& c = vertices[static_cast<size_t>(tri[2])];
    v += a.dot(b.cross(c)) / 6.0;
  }
  return v;
}

double TriMesh::min_triangle_area() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& tri : triangles) {
    const Vec3& a = vertices[static_cast<size_t>(tri[0])];
    const Vec3& b = vertices[static_cast<size_t>(tri[1])];
    const Vec3& c = vertices[static_cast<size_t>(tri[2])];
    m = std::min(m, 0.5 * (b - a).cross(c - a).norm());
  }
  return m;
}

void TriMesh::validate() const {
  if (triangles.empty()) return;  // the empty mesh is a valid zero-shell model
  if (triangles.size() != normals.size())
    throw InvalidMesh("normal count does not match triangle count");
  for (const auto& tri : triangles)
    for (int k : tri)
      if (k < 0 || k >= static_cast<int>(vertices.size()))
        throw InvalidMesh("triangle vertex index out of range");
  if (!watertight()) throw InvalidMesh("mesh is not watertight");
  if (!winding_consistent()) throw InvalidMesh("inconsistent triangle winding");
  if (signed_volume() <= 0) throw InvalidMesh("total signed volume is not positive");
  if (min_triangle_area() <= 1e-12) throw InvalidMesh("degenerate triangle");
}

namespace {

void append_shell(TriMesh& m, const std::vector<Vec3>& verts,
                  const std::vector<std::array<int, 3>>& tris) {
  const int base = static_cast<int>(m.vertices.size());
  m.vertices.insert(m.vertices.end(), verts.begin(), verts.end());
  for (const auto& t : tris) {
    std::array<int, 3> shifted{t[0] + base, t[1] + base, t[2] + base};
    m.triangles.push_back(shifted);
    const Vec3& a = m.vertices[static_cast<size_t>(shifted[0])];
    const Vec3& b = m.vertices[static_cast<size_t>(shifted[1])];
    const Vec3& c = m.vertices[static_cast<size_t>(shifted[2])];
    m.normals.push_back((b - a).cross(c - a).normalized());
  }
}

}  // namespace

TriMesh icosphere(const Vec3& center, double radius, int subdiv) {
  if (subdiv < 0 || subdiv > 4) throw Error("sphere subdivision must be in 0..4");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                         {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                         {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = p.normalized();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdiv; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back((v[static_cast<size_t>(a)] + v[static_cast<size_t>(b)]).normalized());
      const int idx = static_cast<int>(v.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> nf;
    nf.reserve(f.size() * 4);
    for (const auto& tri : f) {
      const int ab = mid(tri[0], tri[1]), bc = mid(tri[1], tri[2]), ca = mid(tri[2], tri[0]);
      nf.push_back({tri[0], ab, ca});
      nf.push_back({tri[1], bc, ab});
      nf.push_back({tri[2], ca, bc});
      nf.push_back({ab, bc, ca});
    }
    f = std::move(nf);
  }
  TriMesh m;
  std::vector<Vec3> scaled(v.size());
  for (size_t i = 0; i < v.size(); ++i) scaled[i] = center + v[i] * radius;
  append_shell(m, scaled, f);
  return m;
}

namespace {

TriMesh cylinder(const Vec3& a, const Vec3& b, double radius) {
  const Vec3 axis = (b - a).normalized();
  const Vec3 ref = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = (ref - axis * ref.dot(axis)).normalized();
  const Vec3 w = axis.cross(u);
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
  const int n = kCylinderSegments;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    const Vec3 radial = u * std::cos(th) + w * std::sin(th);
    verts.push_back(a + radial * radius);  // bottom ring: 0..n-1
  }
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n;
    const Vec3 radial = u * std::cos(th) + w * std::sin(th);
    verts.push_back(b + radial * radius);  // top ring: n..2n-1
  }
  verts.push_back(a);  // 2n
  verts.push_back(b);  // 2n+1
  for (int k = 0; k < n; ++k) {
    const int k1 = (k + 1) % n;
    tris.push_back({k, k1, n + k1});
    tris.push_back({k, n + k1, n + k});
    tris.push_back({2 * n, k1, k});          // bottom cap faces -axis
    tris.push_back({2 * n + 1, n + k, n + k1});  // top cap faces +axis
  }
  TriMesh m;
  append_shell(m, verts, tris);
  return m;
}

}  // namespace

TriMesh mesh_model(const AtomSites& a, const ChainTopology& t, const PhysicalScale& s,
                   int sphere_subdiv) {
  if (a.n_atoms() != static_cast<int>(t.atoms.size()))
    throw ShapeMismatch("sites not aligned with topology");
  TriMesh m;
  std::vector<double> radius_in(t.atoms.size());
  for (size_t i = 0; i < t.atoms.size(); ++i)
    radius_in[i] = s.radius_factor * s.radius_of(t, static_cast<int>(i)) * s.inches_per_angstrom;
  for (size_t i = 0; i < t.atoms.size(); ++i) {
    const TriMesh shell =
        icosphere(a.positions[i] * s.inches_per_angstrom, radius_in[i], sphere_subdiv);
    append_shell(m, shell.vertices, shell.triangles);
  }
  for (auto [i, j] : t.bonds) {
    const double r = kCylinderRadiusFactor *
                     std::min(radius_in[static_cast<size_t>(i)], radius_in[static_cast<size_t>(j)]);
    const TriMesh shell = cylinder(a.positions[static_cast<size_t>(i)] * s.inches_per_angstrom,
                                   a.positions[static_cast<size_t>(j)] * s.inches_per_angstrom, r);
    append_shell(m, shell.vertices, shell.triangles);
  }
  return m;
}

std::string write_stl(const TriMesh& m) {
  m.validate();
  std::string out;
  out.reserve(84 + 50 * m.triangles.size());
  char header[80] = {};
  std::memcpy(header, "PBM-STL v1", 10);
  out.append(header, 80);
  auto put_u32 = [&](std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.append(b, 4);
  };
  auto put_f32 = [&](double v) {
    const float f = static_cast<float>(v);
    char b[4];
    std::memcpy(b, &f, 4);
    out.append(b, 4);
  };
  put_u32(static_cast<std::uint32_t>(m.triangles.size()));
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const Vec3& n = m.normals[t];
    put_f32(n.x); put_f32(n.y); put_f32(n.z);
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = m.vertices[static_cast<size_t>(m.triangles[t][static_cast<size_t>(k)])];
      put_f32(v.x); put_f32(v.y); put_f32(v.z);
    }
    out.append("\0\0", 2);
  }
  return out;
}

std::string write_pdb(const AtomSites& a, const ChainTopology& t) {
  if (a.n_atoms() != static_cast<int>(t.atoms.size()))
    throw ShapeMismatch("sites not aligned with topology");
  static const char* kRoleName[] = {"N", "H", "CA", "HA", "C", "O", nullptr};
  std::ostringstream os;
  char line[96];
  int serial = 1;
  for (size_t i = 0; i < t.atoms.size(); ++i) {
    const Atom& atom = t.atoms[i];
    const ResidueSpec& res = t.sequence[static_cast<size_t>(atom.residue)];
    const bool gly = res.side_chain_class == SideChainClass::Hydrogen;
    const char* name = atom.role == AtomRole::SC ? (gly ? "HA3" : "CB")
                                                 : kRoleName[static_cast<int>(atom.role)];
    const Vec3& p = a.positions[i];
    std::snprintf(line, sizeof line,
                  "ATOM  %5d  %-3s %3s %c%4d    %8.3f%8.3f%8.3f%6.2f%6.2f          %2c\n",
                  serial, name, res.three_letter.c_str(), 'A', atom.residue + 1, p.x, p.y, p.z,
                  1.0, 0.0, atom.element);
    os << line;
    ++serial;
  }
  std::snprintf(line, sizeof line, "TER   %5d      %3s %c%4d\n", serial,
                t.sequence.back().three_letter.c_str(), 'A', t.n_residues());
  os << line << "END\n";
  return os.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

const char* role_name(MagnetRole r) {
  switch (r) {
    case MagnetRole::Detent: return "detent";
    case MagnetRole::HbondDonor: return "hbond_donor";
    case MagnetRole::HbondAcceptor: return "hbond_acceptor";
  }
  return "?";
}
MagnetRole role_from(const std::string& s) {
  if (s == "detent") return MagnetRole::Detent;
  if (s == "hbond_donor") return MagnetRole::HbondDonor;
  if (s == "hbond_acceptor") return MagnetRole::HbondAcceptor;
  throw MalformedPBM(0, "unknown magnet role '" + s + "'");
}

ordered_json conformation_to_json(const Conformation& c) {
  ordered_json phi = ordered_json::array(), psi = ordered_json::array();
  for (int i = 0; i < c.n_residues(); ++i) {
    if (c.phi[static_cast<size_t>(i)]) phi.push_back(*c.phi[static_cast<size_t>(i)]); else phi.push_back(nullptr);
    if (c.psi[static_cast<size_t>(i)]) psi.push_back(*c.psi[static_cast<size_t>(i)]); else psi.push_back(nullptr);
  }
  return ordered_json{{"phi", phi}, {"psi", psi}};
}

Conformation conformation_from_json(const ordered_json& j) {
  Conformation c;
  for (const auto& v : j.at("phi"))
    c.phi.push_back(v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()});
  for (const auto& v : j.at("psi"))
    c.psi.push_back(v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()});
  if (c.phi.size() != c.psi.size()) throw MalformedPBM(0, "phi/psi length mismatch");
  return c;
}

}  // namespace

bool BioModel::operator==(const BioModel& o) const {
  return format_version == o.format_version && source_id == o.source_id && note == o.note &&
         sequence == o.sequence && conformation == o.conformation && scale == o.scale &&
         energy_params == o.energy_params && magnets == o.magnets &&
         measurements == o.measurements && extras_json == o.extras_json;
}

std::string write_pbm(const BioModel& b) {
  ordered_json j;
  j["format_version"] = b.format_version;
  j["provenance"] = {{"source_id", b.source_id}, {"note", b.note}};
  j["sequence"] = b.sequence;
  j["conformation"] = conformation_to_json(b.conformation);
  ordered_json radii;
  for (const auto& [el, r] : b.scale.vdw_radii) radii[std::string(1, el)] = r;
  j["scale"] = {{"inches_per_angstrom", b.scale.inches_per_angstrom},
                {"radius_factor", b.scale.radius_factor},
                {"vdw_radii", radii}};
  j["energy_params"] = {{"detent_strength", b.energy_params.detent_strength},
                        {"detent_width_deg", b.energy_params.detent_width_deg},
                        {"clash_stiffness", b.energy_params.clash_stiffness},
                        {"hbond_strength", b.energy_params.hbond_strength},
                        {"hbond_range", b.energy_params.hbond_range},
                        {"gravity_enabled", b.energy_params.gravity_enabled},
                        {"gravity_coefficient", b.energy_params.gravity_coefficient}};
  ordered_json mags = ordered_json::array();
  for (const auto& m : b.magnets)
    mags.push_back({{"role", role_name(m.role)},
                    {"anchor", m.anchor},
                    {"position_in", {m.position_in.x, m.position_in.y, m.position_in.z}},
                    {"polarity", m.polarity == Polarity::NOut ? "N_out" : "S_out"},
                    {"strength_class", m.strength_class}});
  j["magnets"] = mags;
  ordered_json meas = ordered_json::array();
  for (const auto& m : b.measurements)
    meas.push_back({{"feature", m.feature},
                    {"values", m.values},
                    {"value_angstrom", m.value_angstrom},
                    {"value_inch", m.value_inch},
                    {"n", m.n},
                    {"mean", m.mean},
                    {"sd", m.sd}});
  j["measurements"] = meas;
  if (!b.extras_json.empty()) {
    const ordered_json extras = ordered_json::parse(b.extras_json);
    for (const auto& [k, v] : extras.items()) j[k] = v;
  }
  return j.dump(2) + "\n";
}

BioModel read_pbm(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedPBM(e.byte, e.what());
  }
  if (!j.is_object()) throw MalformedPBM(0, "top level is not an object");
  try {
    const auto& ver = j.at("format_version");
    int version = -1;
    if (ver.is_number_integer()) version = ver.get<int>();
    else if (ver.is_string()) version = std::atoi(ver.get<std::string>().c_str());
    if (version != 1)
      throw UnsupportedVersion("unsupported PBM format_version " + ver.dump());

    BioModel b;
    b.format_version = version;
    b.source_id = j.at("provenance").value("source_id", "");
    b.note = j.at("provenance").value("note", "");
    b.sequence = j.at("sequence").get<std::string>();
    b.conformation = conformation_from_json(j.at("conformation"));
    const auto& sc = j.at("scale");
    b.scale.inches_per_angstrom = sc.at("inches_per_angstrom").get<double>();
    b.scale.radius_factor = sc.at("radius_factor").get<double>();
    b.scale.vdw_radii.clear();
    for (const auto& [el, r] : sc.at("vdw_radii").items()) {
      if (el.size() != 1) throw MalformedPBM(0, "element keys must be single characters");
      b.scale.vdw_radii[el[0]] = r.get<double>();
    }
    const auto& ep = j.at("energy_params");
    b.energy_params.detent_strength = ep.at("detent_strength").get<double>();
    b.energy_params.detent_width_deg = ep.at("detent_width_deg").get<double>();
    b.energy_params.clash_stiffness = ep.at("clash_stiffness").get<double>();
    b.energy_params.hbond_strength = ep.at("hbond_strength").get<double>();
    b.energy_params.hbond_range = ep.at("hbond_range").get<double>();
    b.energy_params.gravity_enabled = ep.at("gravity_enabled").get<bool>();
    b.energy_params.gravity_coefficient = ep.at("gravity_coefficient").get<double>();
    for (const auto& m : j.at("magnets")) {
      MagnetSpec spec;
      spec.role = role_from(m.at("role").get<std::string>());
      spec.anchor = m.at("anchor").get<int>();
      const auto& p = m.at("position_in");
      spec.position_in = {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
      const std::string pol = m.at("polarity").get<std::string>();
      if (pol != "N_out" && pol != "S_out") throw MalformedPBM(0, "bad polarity '" + pol + "'");
      spec.polarity = pol == "N_out" ? Polarity::NOut : Polarity::SOut;
      spec.strength_class = m.at("strength_class").get<int>();
      b.magnets.push_back(spec);
    }
    for (const auto& m : j.value("measurements", ordered_json::array())) {
      Measurement mm;
      mm.feature = m.at("feature").get<std::string>();
      mm.values = m.at("values").get<std::vector<double>>();
      mm.value_angstrom = m.at("value_angstrom").get<double>();
      mm.value_inch = m.at("value_inch").get<double>();
      mm.n = m.at("n").get<int>();
      mm.mean = m.at("mean").get<double>();
      mm.sd = m.at("sd").get<double>();
      b.measurements.push_back(mm);
    }
    static const char* kKnown[] = {"format_version", "provenance", "sequence", "conformation",
                                   "scale", "energy_params", "magnets", "measurements"};
    ordered_json extras;
    for (const auto& [k, v] : j.items()) {
      if (std::find_if(std::begin(kKnown), std::end(kKnown),
                       [&](const char* s) { return k == s; }) == std::end(kKnown))
        extras[k] = v;
    }
    if (!extras.is_null() && !extras.empty()) b.extras_json = extras.dump();
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedPBM(0, std::string("schema error: ") + e.what());
  }
}

BioModel make_biomodel(const std::string& sequence, const Conformation& c,
                       const PhysicalScale& s, const EnergyParams& p,
                       const DetentTable& detents, const std::string& source_id,
                       const std::string& note) {
  if (static_cast<int>(sequence.size()) != c.n_residues())
    throw ShapeMismatch("sequence and conformation lengths differ");
  BioModel b;
  b.source_id = source_id;
  b.note = note;
  b.sequence = sequence;
  b.conformation = c;
  b.scale = s;
  b.energy_params = p;
  b.magnets = magnet_layout(build_topology(sequence), detents, s);
  return b;
}

}  // namespace peppy
