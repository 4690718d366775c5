// Copyright 2026 Project Peppy Contributors
// SPDX-License-Identifier: Apache-2.0
#include "peppy/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "peppy/config.hpp"
#include "peppy/fab.hpp"
#include "peppy/fold.hpp"
#include "peppy/geometry.hpp"
#include "peppy/pdb.hpp"
#include "peppy/rama.hpp"
#include "peppy/validate.hpp"

namespace peppy::cli {

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Config resolve_config(const std::string& config_path) {
  if (!config_path.empty()) return load_config_file(config_path);
  if (const char* env = std::getenv("PEPPY_CONFIG"); env && *env)
    return load_config_file(env);
  return default_config();
}

BioModel load_model(const std::string& path) { return read_pbm(read_file(path)); }

/// Conformation argument: a canonical name, or a JSON file with
/// {"phi": [...], "psi": [...]} (null for absent termini).
Conformation resolve_conformation(const std::string& arg, int n, const Config& cfg) {
  if (cfg.canonical.find(arg)) return canonical_conformation(arg, n, cfg.canonical);
  std::ifstream f(arg);
  if (!f) throw UnknownConformation("'" + arg + "' is neither a canonical name nor a file");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("conformation file '" + arg + "': " + e.what());
  }
  Conformation c;
  for (const auto& v : j.at("phi"))
    c.phi.push_back(v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()});
  for (const auto& v : j.at("psi"))
    c.psi.push_back(v.is_null() ? std::optional<double>{} : std::optional<double>{v.get<double>()});
  if (c.n_residues() != n)
    throw ShapeMismatch("conformation file has " + std::to_string(c.n_residues()) +
                        " residues, sequence has " + std::to_string(n));
  return c;
}

struct ModelParts {
  ChainTopology topology;
  AtomSites sites;
};

ModelParts rebuild(const BioModel& b, const Config& cfg) {
  ModelParts p;
  p.topology = build_topology(b.sequence, cfg.residues);
  p.sites = forward_kinematics(p.topology, cfg.geometry, b.conformation);
  return p;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"peppy - polypeptide physical-model compiler"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config overriding the built-in tables")
      ->envname("PEPPY_CONFIG");

  // import
  auto* cmd_import = app.add_subcommand("import", "PDB file -> PBM model record");
  std::string import_pdb, import_chain = "A", import_out, import_source;
  cmd_import->add_option("pdb", import_pdb, "input PDB file")->required();
  cmd_import->add_option("--chain", import_chain, "chain identifier (default A)");
  cmd_import->add_option("--out", import_out, "output PBM path")->required();
  cmd_import->add_option("--source-id", import_source, "provenance id (default: file name)");

  // build
  auto* cmd_build = app.add_subcommand("build", "sequence + conformation -> PBM model record");
  std::string build_seq, build_conf = "alpha_helix", build_out;
  cmd_build->add_option("--seq", build_seq, "one-letter residue codes")->required();
  cmd_build->add_option("--conf", build_conf, "canonical name or conformation JSON file");
  cmd_build->add_option("--out", build_out, "output PBM path")->required();

  // measure
  auto* cmd_measure = app.add_subcommand("measure", "computed metrology on a PBM model");
  std::string measure_pbm, measure_feature = "span", measure_out;
  cmd_measure->add_option("pbm", measure_pbm, "input PBM file")->required();
  cmd_measure->add_option("--feature", measure_feature,
                          "span | ca:I-J | n:I-J | atoms:I-J | hbonds");
  cmd_measure->add_option("--out", measure_out, "write machine-readable CSV here");

  // rama
  auto* cmd_rama = app.add_subcommand("rama", "Ramachandran feasibility, histograms, comparison");
  cmd_rama->require_subcommand(1);
  auto* rama_feas = cmd_rama->add_subcommand("feasibility", "hard-sphere feasibility map");
  std::string feas_probe = "AAA", feas_out, feas_format = "csv";
  int feas_bin = 10;
  double feas_factor = 0.0;
  rama_feas->add_option("--probe", feas_probe, "probe sequence (default AAA)");
  rama_feas->add_option("--bin", feas_bin, "bin width in degrees (default 10)");
  rama_feas->add_option("--radius-factor", feas_factor, "override hard-sphere factor");
  rama_feas->add_option("--format", feas_format, "csv | pgm")
      ->check(CLI::IsMember({"csv", "pgm"}));
  rama_feas->add_option("--out", feas_out, "output path")->required();

  auto* rama_hist = cmd_rama->add_subcommand("histogram", "observed (phi,psi) histogram");
  std::vector<std::string> hist_inputs;
  std::string hist_chain, hist_out;
  int hist_bin = 10;
  rama_hist->add_option("inputs", hist_inputs, "PDB files")->required();
  rama_hist->add_option("--chain", hist_chain, "restrict to one chain id");
  rama_hist->add_option("--bin", hist_bin, "bin width in degrees (default 10)");
  rama_hist->add_option("--out", hist_out, "output CSV path")->required();

  auto* rama_cmp = cmd_rama->add_subcommand("compare", "observed vs feasible coverage score");
  std::string cmp_obs, cmp_feas;
  rama_cmp->add_option("--observed", cmp_obs, "observed histogram CSV")->required();
  rama_cmp->add_option("--feasible", cmp_feas, "feasibility map CSV")->required();

  // clash
  auto* cmd_clash = app.add_subcommand("clash", "hard-sphere clash report for a PBM model");
  std::string clash_pbm;
  cmd_clash->add_option("pbm", clash_pbm, "input PBM file")->required();

  // fold
  auto* cmd_fold = app.add_subcommand("fold", "snap a PBM model to the detent energy minimum");
  std::string fold_pbm, fold_out, fold_traj;
  double fold_tol = 1e-6;
  int fold_iters = 5000;
  cmd_fold->add_option("pbm", fold_pbm, "input PBM file")->required();
  cmd_fold->add_option("--out", fold_out, "output PBM path")->required();
  cmd_fold->add_option("--trajectory", fold_traj, "dump accepted steps to this file");
  cmd_fold->add_option("--tol", fold_tol, "gradient infinity-norm tolerance");
  cmd_fold->add_option("--max-iters", fold_iters, "iteration cap");

  // export
  auto* cmd_export = app.add_subcommand("export", "write STL or PDB from a PBM model");
  std::string export_pbm, export_format, export_out;
  int export_subdiv = 2;
  cmd_export->add_option("pbm", export_pbm, "input PBM file")->required();
  cmd_export->add_option("--format", export_format, "stl | pdb")
      ->required()
      ->check(CLI::IsMember({"stl", "pdb"}));
  cmd_export->add_option("--out", export_out, "output path")->required();
  cmd_export->add_option("--subdiv", export_subdiv, "sphere subdivision 0..4 (default 2)");

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "run the validation suite");
  std::string validate_fixtures = "fixtures", validate_only;
  cmd_validate->add_option("--fixtures", validate_fixtures, "fixture directory");
  cmd_validate->add_option("--only", validate_only, "run checks with this id prefix");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const Config cfg = resolve_config(config_path);

  if (*cmd_import) {
    const auto raw = parse_pdb_file(import_pdb);
    if (import_chain.size() != 1) throw UnknownChain("chain id must be one character");
    const auto trace = extract_backbone(raw, import_chain[0]);
    const auto seq = sequence_from_trace(trace, cfg.residues);
    const auto conf = conformation_from_trace(trace);
    const std::string source = import_source.empty() ? import_pdb : import_source;
    BioModel b = make_biomodel(seq, conf, cfg.scale, EnergyParams{},
                               DetentTable::from_canonical(cfg.canonical), source,
                               "imported from PDB chain " + import_chain);
    write_file(import_out, write_pbm(b));
    out << "imported " << seq.size() << " residues (chain " << import_chain << ", "
        << trace.n_segments() << " segment" << (trace.n_segments() == 1 ? "" : "s") << ") -> "
        << import_out << "\n";
    if (trace.dropped_residues > 0)
      out << "dropped " << trace.dropped_residues << " backbone-incomplete residue(s)\n";
    return 0;
  }

  if (*cmd_build) {
    const int n = static_cast<int>(build_seq.size());
    build_topology(build_seq, cfg.residues);  // validates codes early
    const auto conf = resolve_conformation(build_conf, n, cfg);
    BioModel b = make_biomodel(build_seq, conf, cfg.scale, EnergyParams{},
                               DetentTable::from_canonical(cfg.canonical), "build:" + build_seq,
                               "built from conformation " + build_conf);
    write_file(build_out, write_pbm(b));
    out << "built " << n << "-residue model -> " << build_out << "\n";
    return 0;
  }

  if (*cmd_measure) {
    const BioModel b = load_model(measure_pbm);
    const auto parts = rebuild(b, cfg);
    const auto feature = FeatureSpec::parse(measure_feature);
    const auto m = measure(parts.sites, parts.topology, feature, b.scale);
    out << m.feature << ": " << m.value_angstrom << " A = " << m.value_inch << " in";
    if (m.n > 1) out << "  (n=" << m.n << ", mean " << m.mean << " A, sd " << m.sd << " A)";
    out << "\n";
    if (m.n > 1) {
      out << "instances (A):";
      for (double v : m.values) out << " " << v;
      out << "\n";
    }
    if (!measure_out.empty()) write_file(measure_out, measurements_to_csv({m}));
    return 0;
  }

  if (*rama_feas) {
    PhysicalScale scale = cfg.scale;
    if (feas_factor > 0) scale.radius_factor = feas_factor;
    const auto map =
        feasibility_map(feas_probe, scale, feas_bin, cfg.residues, cfg.geometry, cfg.canonical);
    write_file(feas_out,
               export_map(map, feas_format == "pgm" ? MapFormat::Pgm : MapFormat::Csv));
    out << "feasibility map " << map.bins() << "x" << map.bins() << ", "
        << static_cast<long>(map.total()) << " feasible cells -> " << feas_out << "\n";
    return 0;
  }

  if (*rama_hist) {
    std::vector<Conformation> confs;
    long pairs = 0;
    for (const auto& path : hist_inputs) {
      const auto raw = parse_pdb_file(path);
      std::vector<char> chains = raw.chains();
      if (!hist_chain.empty()) chains = {hist_chain[0]};
      for (char ch : chains) {
        const auto trace = extract_backbone(raw, ch);
        if (trace.residues.size() < 2) continue;
        confs.push_back(conformation_from_trace(trace));
      }
    }
    const auto map = histogram(confs, hist_bin);
    pairs = static_cast<long>(map.total());
    write_file(hist_out, export_map(map, MapFormat::Csv));
    out << "histogram of " << pairs << " (phi,psi) pairs from " << confs.size()
        << " chain(s) -> " << hist_out << "\n";
    return 0;
  }

  if (*rama_cmp) {
    const auto observed = import_map_csv(read_file(cmp_obs));
    const auto feasible = import_map_csv(read_file(cmp_feas));
    const auto res = compare(observed, feasible);
    out << "coverage score: " << res.score << "\n";
    const size_t top = std::min<size_t>(res.discrepancies.size(), 10);
    if (top > 0) {
      out << "top observed-but-infeasible cells:\n";
      for (size_t k = 0; k < top; ++k)
        out << "  phi " << res.discrepancies[k].phi_center << " psi "
            << res.discrepancies[k].psi_center << " count " << res.discrepancies[k].count << "\n";
    }
    return 0;
  }

  if (*cmd_clash) {
    const BioModel b = load_model(clash_pbm);
    const auto parts = rebuild(b, cfg);
    const auto rep = detect_clashes(parts.sites, parts.topology, b.scale);
    out << rep.clashes.size() << " clash(es), total overlap " << rep.total_overlap << " A\n";
    for (const auto& c : rep.clashes)
      out << "  atoms " << c.a << "-" << c.b << " distance " << c.distance << " A overlap "
          << c.overlap << " A\n";
    return 0;
  }

  if (*cmd_fold) {
    const BioModel b = load_model(fold_pbm);
    const auto topo = build_topology(b.sequence, cfg.residues);
    const EnergyModel model(topo, cfg.geometry, b.scale, b.energy_params,
                            DetentTable::from_canonical(cfg.canonical));
    std::ofstream traj;
    TrajectorySink sink;
    if (!fold_traj.empty()) {
      traj.open(fold_traj);
      if (!traj) throw Error("cannot write '" + fold_traj + "'");
      traj << "# iteration energy grad_inf_norm angles...\n";
      sink = [&traj](int it, double e, double gn, const std::vector<double>& angles) {
        traj << it << " " << e << " " << gn;
        for (double a : angles) traj << " " << a;
        traj << "\n";
      };
    }
    const FoldResult res = model.minimize(b.conformation, fold_tol, fold_iters, sink);
    BioModel out_model = b;
    out_model.conformation = res.conformation;
    out_model.note = b.note + "; folded to energy " + std::to_string(res.energy);
    write_file(fold_out, write_pbm(out_model));
    out << (res.converged ? "converged" : "not converged") << " after " << res.iterations
        << " iteration(s), energy " << res.energy << ", grad " << res.grad_inf_norm << " -> "
        << fold_out << "\n";
    return 0;
  }

  if (*cmd_export) {
    const BioModel b = load_model(export_pbm);
    const auto parts = rebuild(b, cfg);
    if (export_format == "stl") {
      const auto mesh = mesh_model(parts.sites, parts.topology, b.scale, export_subdiv);
      write_file(export_out, write_stl(mesh));
      out << "STL with " << mesh.n_triangles() << " triangles ("
          << 84 + 50 * static_cast<size_t>(mesh.n_triangles()) << " bytes) -> " << export_out
          << "\n";
    } else {
      write_file(export_out, write_pdb(parts.sites, parts.topology));
      out << "PDB with " << parts.topology.atoms.size() << " atoms -> " << export_out << "\n";
    }
    return 0;
  }

  if (*cmd_validate) {
    const auto results = run_validation(validate_fixtures, validate_only);
    out << format_validation_report(results);
    for (const auto& r : results)
      if (!r.pass) return 1;
    return 0;
  }

  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace peppy::cli
