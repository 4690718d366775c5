// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/rama.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace peppy {

void RamaMap::check_bin_width(int w) {
  if (w <= 0 || 360 % w != 0)
    throw BadBinning("bin width " + std::to_string(w) + " does not divide 360");
}

int RamaMap::bin_of(double angle_deg) const {
  const double w = wrap_angle(angle_deg);
  int b = static_cast<int>(std::floor((w + 180.0) / bin_width));
  return std::clamp(b, 0, bins() - 1);
}

double RamaMap::center_of(int bin_index) const {
  return -180.0 + (bin_index + 0.5) * bin_width;
}

double RamaMap::total() const {
  double s = 0;
  for (double v : cells) s += v;
  return s;
}

RamaMap feasibility_map(const std::string& probe, const PhysicalScale& scale, int bin_width,
                        const ResidueTable& residues, const BackboneGeometry& geometry,
                        const CanonicalTable& canonical) {
  RamaMap::check_bin_width(bin_width);
  const int n = static_cast<int>(probe.size());
  if (n < 3) throw Error("probe must have at least 3 residues");

  const ChainTopology topo = build_topology(probe, residues);
  Conformation base = canonical_conformation("antiparallel_beta", n, canonical);
  const int central = n / 2;  // 0-based; swept residue

  RamaMap m;
  m.bin_width = bin_width;
  m.mode = RamaMap::Mode::Feasibility;
  m.label = "feasibility " + probe;
  m.cells.assign(static_cast<size_t>(m.bins()) * m.bins(), 0.0);
  for (int ip = 0; ip < m.bins(); ++ip) {
    for (int is = 0; is < m.bins(); ++is) {
      Conformation c = base;
      c.phi[central] = m.center_of(ip);
      c.psi[central] = m.center_of(is);
      const AtomSites sites = forward_kinematics(topo, geometry, c);
      m.at(ip, is) = detect_clashes(sites, topo, scale).empty() ? 1.0 : 0.0;
    }
  }
  return m;
}

RamaMap histogram(const std::vector<Conformation>& confs, int bin_width) {
  RamaMap::check_bin_width(bin_width);
  RamaMap m;
  m.bin_width = bin_width;
  m.mode = RamaMap::Mode::Histogram;
  m.label = "histogram";
  m.cells.assign(static_cast<size_t>(m.bins()) * m.bins(), 0.0);
  for (const auto& c : confs) {
    for (int i = 0; i < c.n_residues(); ++i)
      if (c.phi[i] && c.psi[i]) m.at(m.bin_of(*c.phi[i]), m.bin_of(*c.psi[i])) += 1.0;
  }
  return m;
}

CompareResult compare(const RamaMap& observed, const RamaMap& feasible) {
  if (observed.bin_width != feasible.bin_width)
    throw BadBinning("bin widths differ: " + std::to_string(observed.bin_width) + " vs " +
                     std::to_string(feasible.bin_width));
  CompareResult r{1.0, {}};
  double total = 0, inside = 0;
  for (int ip = 0; ip < observed.bins(); ++ip) {
    for (int is = 0; is < observed.bins(); ++is) {
      const double v = observed.at(ip, is);
      if (v <= 0) continue;
      total += v;
      if (feasible.at(ip, is) > 0)
        inside += v;
      else
        r.discrepancies.push_back({observed.center_of(ip), observed.center_of(is), v});
    }
  }
  r.score = total > 0 ? inside / total : 1.0;
  std::stable_sort(r.discrepancies.begin(), r.discrepancies.end(),
                   [](const Discrepancy& a, const Discrepancy& b) { return a.count > b.count; });
  return r;
}

std::string export_map(const RamaMap& m, MapFormat format) {
  std::ostringstream os;
  if (format == MapFormat::Csv) {
    os << "phi_center,psi_center,value\n";
    char buf[96];
    for (int ip = 0; ip < m.bins(); ++ip)
      for (int is = 0; is < m.bins(); ++is) {
        std::snprintf(buf, sizeof buf, "%.1f,%.1f,%.10g\n", m.center_of(ip), m.center_of(is),
                      m.at(ip, is));
        os << buf;
      }
    return os.str();
  }
  if (format == MapFormat::Pgm) {
    double vmax = 0;
    for (double v : m.cells) vmax = std::max(vmax, v);
    os << "P5\n" << m.bins() << " " << m.bins() << "\n255\n";
    for (int is = m.bins() - 1; is >= 0; --is)
      for (int ip = 0; ip < m.bins(); ++ip) {
        const int g = vmax > 0 ? static_cast<int>(std::lround(m.at(ip, is) / vmax * 255.0)) : 0;
        os.put(static_cast<char>(std::clamp(g, 0, 255)));
      }
    return os.str();
  }
  throw BadFormat("unknown map format");
}

RamaMap import_map_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("phi_center", 0) != 0)
    throw BadFormat("missing phi_center,psi_center,value header");
  std::vector<double> phis, psis, values;
  size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double a, b, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &v) != 3)
      throw BadFormat("bad CSV row at line " + std::to_string(line_no));
    phis.push_back(a);
    psis.push_back(b);
    values.push_back(v);
  }
  const auto n = values.size();
  const int bins = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (bins <= 0 || static_cast<size_t>(bins) * bins != n || 360 % bins != 0)
    throw BadFormat("cell count " + std::to_string(n) + " is not a square grid over 360 deg");
  RamaMap m;
  m.bin_width = 360 / bins;
  m.label = "imported";
  m.cells.assign(n, 0.0);
  bool feasibility_like = true;
  for (size_t k = 0; k < n; ++k) {
    const int ip = static_cast<int>(k) / bins, is = static_cast<int>(k) % bins;
    if (std::abs(phis[k] - m.center_of(ip)) > 1e-6 || std::abs(psis[k] - m.center_of(is)) > 1e-6)
      throw BadFormat("cell centers out of order at row " + std::to_string(k + 2));
    m.cells[k] = values[k];
    if (values[k] != 0.0 && values[k] != 1.0) feasibility_like = false;
  }
  m.mode = feasibility_like ? RamaMap::Mode::Feasibility : RamaMap::Mode::Histogram;
  return m;
}

}  // namespace peppy
