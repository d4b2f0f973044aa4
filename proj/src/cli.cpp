// Copyright 2026 The dickesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dickesim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dickesim/analysis.hpp"
#include "dickesim/circuit.hpp"
#include "dickesim/common.hpp"
#include "dickesim/fock.hpp"
#include "dickesim/io.hpp"
#include "dickesim/postselect.hpp"
#include "dickesim/qubits.hpp"
#include "dickesim/sources.hpp"
#include "dickesim/tomography.hpp"

namespace dickesim {

namespace {

using nlohmann::json;

// full-precision float for round-trippable reference names
std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonArgs {
  std::string config_path;
  double phi = 0.0;
  bool phi_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  bool out_set = false;
};

// Resolved run context shared by every subcommand.
struct Run {
  json cfg;
  std::string command;  // argv tail, for the provenance sidecar
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
};

Run load_run(const CommonArgs& args, const std::vector<std::string>& argv_tail) {
  Run run;
  json cfg;
  if (args.config_path.empty()) {
    cfg = json::object();
  } else {
    std::string text;
    try {
      text = read_text_file(args.config_path);
    } catch (const DataError&) {
      throw SpecError("config file not found: " + args.config_path);
    }
    try {
      cfg = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SpecError(std::string("config parse error in ") +
                      args.config_path + ": " + e.what());
    }
    if (!cfg.is_object())
      throw SpecError("config root must be a JSON object: " +
                      args.config_path);
  }
  if (args.phi_set) cfg["source"]["phi"] = args.phi;
  if (args.seed_set) cfg["tomography"]["seed"] = args.seed;
  if (args.out_set) cfg["out"] = args.out_dir;

  run.cfg = cfg;
  run.config_hash = fnv1a64(cfg.dump());
  run.seed = cfg.contains("tomography")
                 ? cfg["tomography"].value("seed", std::uint64_t{1})
                 : std::uint64_t{1};
  run.out_dir = cfg.value("out", std::string("out"));
  std::string cmd;
  for (const auto& a : argv_tail) {
    if (!cmd.empty()) cmd += ' ';
    cmd += a;
  }
  run.command = cmd;
  return run;
}

SourceModel source_from(const json& cfg) {
  SourceModel m;
  if (cfg.contains("source")) {
    const json& s = cfg.at("source");
    m.g = s.value("g", m.g);
    m.phi = s.value("phi", m.phi);
    if (s.contains("schmidt"))
      m.schmidt = s.at("schmidt").get<std::vector<double>>();
    m.g1 = s.value("g1", m.g1);
    m.g2 = s.value("g2", m.g2);
    m.max_pairs = s.value("max_pairs", m.max_pairs);
  }
  validate(m);
  return m;
}

struct ResolvedCircuit {
  CircuitSpec spec;
  int pairs = 1;       // pair order consumed by full coincidence
  std::string preset;  // empty for inline circuits
};

ElementKind element_kind(const std::string& name) {
  if (name == "mmi") return ElementKind::MMI;
  if (name == "phase_shifter") return ElementKind::PhaseShifter;
  if (name == "cross") return ElementKind::Cross;
  if (name == "attenuator") return ElementKind::Attenuator;
  throw SpecError("unknown circuit element kind: " + name);
}

std::vector<int> rail_list(const json& j) {
  if (j.is_number_integer()) return {j.get<int>()};
  return j.get<std::vector<int>>();
}

ResolvedCircuit circuit_from(const json& cfg) {
  ResolvedCircuit rc;
  const json c = cfg.value("circuit", json("dicke4"));
  if (c.is_string()) {
    const std::string name = c.get<std::string>();
    int ports = 0;
    if (name == "bell2")
      ports = 2;
    else if (name == "dicke4")
      ports = 4;
    else if (name == "dicke8")
      ports = 8;
    else
      throw SpecError("unknown circuit preset: " + name);
    rc.spec = build_dicke_network(ports);
    rc.pairs = ports / 2;
    rc.preset = name;
    return rc;
  }
  if (!c.is_object())
    throw SpecError("circuit must be a preset name or an object");
  CircuitSpec spec;
  spec.n_modes = c.at("n_modes").get<int>();
  for (const json& e : c.value("elements", json::array())) {
    CircuitElement el;
    el.kind = element_kind(e.at("kind").get<std::string>());
    el.mode_a = e.at("a").get<int>();
    el.mode_b = e.value("b", -1);
    el.param = e.value("param", 0.0);
    if (el.kind == ElementKind::Cross && !e.contains("param"))
      el.param = kDefaultCrossLossDb;
    spec.elements.push_back(el);
  }
  for (const json& p : c.value("ports", json::array())) {
    Port port;
    port.label = p.at("label").get<std::string>();
    port.rail0 = rail_list(p.at("rail0"));
    port.rail1 = rail_list(p.at("rail1"));
    port.cal_phase = p.value("cal_phase", 0.0);
    spec.ports.push_back(port);
  }
  validate(spec);
  if (spec.ports.empty()) throw SpecError("circuit defines no ports");
  rc.spec = spec;
  rc.pairs = c.value("pairs", std::max<int>(1, spec.ports.size() / 2));
  if (rc.pairs < 1) throw SpecError("pairs must be >= 1");
  return rc;
}

// Default reference tracks the preset; an explicit config name wins.
std::string reference_name(const json& cfg, const ResolvedCircuit& rc,
                           double phi) {
  if (cfg.contains("reference")) return cfg.at("reference").get<std::string>();
  if (rc.preset == "bell2") return "psi2:" + format_full(phi);
  if (rc.preset == "dicke4") return "psi4:" + format_full(phi);
  if (rc.preset == "dicke8") return "D8m4";
  return "";
}

bool spectrally_pure(const SourceModel& m) {
  return m.schmidt.size() == 1 && m.g1 == 0.0 && m.g2 == 0.0;
}

// Source, network and full-coincidence projection in one step.  The pure
// branch expands the exact pair order directly; the tagged branch carries
// undetected process and Schmidt labels and conditions on the same order.
PostselectResult run_pipeline(const SourceModel& m, const ResolvedCircuit& rc) {
  if (spectrally_pure(m)) {
    FockSpace space = FockSpace::plain(rc.spec.n_modes, 2 * rc.pairs);
    FockVector src = ideal_pair_state_on(space, 0, 1, m.phi, rc.pairs);
    return postselect(apply(compile(rc.spec), src), rc.spec.ports);
  }
  TaggedSpace tagged(rc.spec.n_modes, static_cast<int>(m.schmidt.size()),
                     2 * rc.pairs);
  CircuitSpec lifted = lift_to_tagged(rc.spec, tagged);
  QuadraticForm form =
      transform_exponent(pair_exponent(m, tagged), compile(lifted));
  FockVector state = expand_pairs(form, tagged.space(), rc.pairs, rc.pairs);
  return postselect(state, lifted.ports);
}

std::string artifact_path(const Run& run, const std::string& name) {
  return (std::filesystem::path(run.out_dir) / name).string();
}

void emit(const Run& run, const std::string& name, const std::string& content) {
  const std::string path = artifact_path(run, name);
  write_text_file(path, content);
  write_sidecar(path, run.command, run.config_hash, run.seed);
  std::cout << "wrote " << path << "\n";
}

json amplitude_list(const Eigen::VectorXcd& v) {
  auto arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(json::array({v[i].real(), v[i].imag()}));
  return arr;
}

int cmd_state(const Run& run) {
  const SourceModel m = source_from(run.cfg);
  const ResolvedCircuit rc = circuit_from(run.cfg);
  const PostselectResult res = run_pipeline(m, rc);
  const std::string ref = reference_name(run.cfg, rc, m.phi);

  json out;
  out["found"] = res.found;
  out["probability"] = res.probability;
  out["pure"] = res.pure;
  out["port_labels"] = res.port_labels;
  out["phi"] = m.phi;
  if (res.found && res.pure) out["amplitudes"] = amplitude_list(res.state);
  if (res.found && !ref.empty()) {
    const Eigen::VectorXcd target = reference_state(ref);
    if (target.size() != (res.pure ? res.state.size() : res.rho.dim()))
      throw SpecError("reference state size does not match the port count: " +
                      ref);
    out["reference"] = ref;
    out["fidelity"] =
        res.pure ? fidelity(res.state, target) : fidelity(res.rho, target);
  }
  emit(run, "state.json", out.dump(2) + "\n");
  if (res.found && !res.pure) emit(run, "state_rho.json", density_json(res.rho));
  std::cout << "probability " << format_double(res.probability);
  if (out.contains("fidelity"))
    std::cout << "  fidelity " << format_double(out["fidelity"].get<double>());
  std::cout << "\n";
  return 0;
}

Eigen::VectorXd distribution(const PostselectResult& res,
                             const QubitBasis& basis) {
  if (res.pure) {
    const Eigen::VectorXcd v = change_basis(res.state, basis);
    return v.cwiseAbs2();
  }
  return change_basis(res.rho, basis).entries().diagonal().real();
}

std::string bit_label(int value, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q)
    if ((value >> (n_qubits - 1 - q)) & 1) s[q] = '1';
  return s;
}

int cmd_sweep(const Run& run) {
  SourceModel m = source_from(run.cfg);
  const ResolvedCircuit rc = circuit_from(run.cfg);
  const json sw = run.cfg.value("sweep", json::object());
  const double phi_min = sw.value("phi_min", 0.0);
  const double phi_max = sw.value("phi_max", kPi);
  const int points = sw.value("points", 21);
  if (points < 2 || !(phi_max > phi_min))
    throw SpecError("sweep requires points >= 2 and phi_max > phi_min");

  const int n = static_cast<int>(rc.spec.ports.size());
  const int dim = 1 << n;
  // the rotated frame counter-rotates so the projected state sits still
  const auto basis_for = [n](BasisKind kind, double phi) {
    return QubitBasis::uniform(kind, n,
                               kind == BasisKind::Rotated ? -phi : 0.0);
  };
  const std::vector<std::pair<std::string, BasisKind>> bases = {
      {"z", BasisKind::Z}, {"y", BasisKind::Y}, {"rotated", BasisKind::Rotated}};

  std::vector<std::string> header = {"phi"};
  for (int v = 0; v < dim; ++v) header.push_back("p_" + bit_label(v, n));
  std::vector<std::string> body(bases.size());
  std::string sim_csv = csv_line({"phi", "z", "y", "rotated"});

  for (int t = 0; t < points; ++t) {
    const double phi =
        phi_min + (phi_max - phi_min) * t / static_cast<double>(points - 1);
    m.phi = phi;
    const PostselectResult res = run_pipeline(m, rc);
    if (!res.found) throw DataError("post-selection removed every outcome");
    const std::string ref = reference_name(run.cfg, rc, phi);
    std::vector<std::string> sim_row = {format_double(phi)};
    for (std::size_t b = 0; b < bases.size(); ++b) {
      const QubitBasis basis = basis_for(bases[b].second, phi);
      const Eigen::VectorXd dist = distribution(res, basis);
      std::vector<std::string> row = {format_double(phi)};
      for (int v = 0; v < dim; ++v) row.push_back(format_double(dist[v]));
      body[b] += csv_line(row);
      if (!ref.empty()) {
        const Eigen::VectorXcd target = reference_state(ref);
        const Eigen::VectorXd ideal = change_basis(target, basis).cwiseAbs2();
        sim_row.push_back(format_double(
            similarity(Eigen::MatrixXd(dist), Eigen::MatrixXd(ideal))));
      } else {
        sim_row.push_back("");
      }
    }
    sim_csv += csv_line(sim_row);
  }
  const std::string head = csv_line(header);
  for (std::size_t b = 0; b < bases.size(); ++b)
    emit(run, "sweep_" + bases[b].first + ".csv", head + body[b]);
  emit(run, "sweep_similarity.csv", sim_csv);
  return 0;
}

int cmd_tomo(const Run& run) {
  const SourceModel m = source_from(run.cfg);
  const ResolvedCircuit rc = circuit_from(run.cfg);
  const json tm = run.cfg.value("tomography", json::object());
  const double exposure = tm.value("exposure", 1000.0);
  const int trials = tm.value("trials", 100);
  if (exposure <= 0.0) throw SpecError("tomography exposure must be positive");
  if (trials < 1) throw SpecError("tomography trials must be >= 1");

  const PostselectResult res = run_pipeline(m, rc);
  if (!res.found) throw DataError("post-selection removed every outcome");
  const DensityMatrix rho =
      res.pure ? DensityMatrix::from_pure(res.state) : res.rho;
  const int n = rho.qubits();

  const auto settings = all_pauli_settings(n);
  const CountsTable counts = simulate_counts(rho, settings, exposure, run.seed);
  const DensityMatrix recon = reconstruct(counts);

  json out;
  out["exposure"] = exposure;
  out["qubits"] = n;
  out["seed"] = run.seed;
  out["settings"] = settings.size();
  out["trials"] = trials;
  out["purity"] = purity(recon);
  const std::string ref = reference_name(run.cfg, rc, m.phi);
  if (!ref.empty()) {
    const Eigen::VectorXcd target = reference_state(ref);
    out["reference"] = ref;
    out["fidelity"] = fidelity(recon, target);
    const MonteCarloSummary mc = monte_carlo(counts, target, trials, run.seed);
    out["mc_fidelity_mean"] = mc.fidelity_mean;
    out["mc_fidelity_std"] = mc.fidelity_std;
    out["mc_purity_mean"] = mc.purity_mean;
    out["mc_purity_std"] = mc.purity_std;
  }
  emit(run, "tomo_counts.csv", counts_csv(counts));
  emit(run, "tomo_rho.json", density_json(recon));
  emit(run, "tomo_summary.json", out.dump(2) + "\n");
  if (out.contains("fidelity"))
    std::cout << "fidelity " << format_double(out["fidelity"].get<double>())
              << "\n";
  return 0;
}

MultiPair multi_pair_from(const std::string& name) {
  if (name == "auto") return MultiPair::Auto;
  if (name == "exclude") return MultiPair::Exclude;
  if (name == "include") return MultiPair::Include;
  throw SpecError("multi_pair must be auto, exclude or include: " + name);
}

int cmd_analyze_fringe(const Run& run) {
  const SourceModel m = source_from(run.cfg);
  const json fr = run.cfg.contains("analyze")
                      ? run.cfg["analyze"].value("fringe", json::object())
                      : json::object();
  const int points = fr.value("points", 41);
  const double phi_min = fr.value("phi_min", 0.0);
  const double phi_max = fr.value("phi_max", kPi);
  const MultiPair mp =
      multi_pair_from(fr.value("multi_pair", std::string("auto")));
  std::vector<DetectorPair> pairs;
  if (fr.contains("pairs")) {
    for (const json& p : fr.at("pairs"))
      pairs.emplace_back(p.at(0).get<std::string>(),
                         p.at(1).get<std::string>());
  } else {
    pairs = all_detector_pairs();
  }
  if (points < 2) throw SpecError("fringe requires points >= 2");
  std::vector<double> grid(points);
  for (int t = 0; t < points; ++t)
    grid[t] = phi_min + (phi_max - phi_min) * t / (points - 1.0);

  const FringeCurve curve = rhom_fringe(m, pairs, grid, mp);
  emit(run, "fringe.csv", fringe_csv(curve));
  emit(run, "fringe_accidental.csv", fringe_accidental_csv(curve));
  emit(run, "fringe_visibility.csv", fringe_visibility_csv(curve));
  return 0;
}

int cmd_analyze_jsi(const Run& run) {
  const json jc = run.cfg.contains("analyze")
                      ? run.cfg["analyze"].value("jsi", json::object())
                      : json::object();
  JsiConfig cfg;
  cfg.pump1_q = jc.value("pump1_q", cfg.pump1_q);
  cfg.pump2_q = jc.value("pump2_q", cfg.pump2_q);
  cfg.pump1_lambda_nm = jc.value("pump1_lambda_nm", cfg.pump1_lambda_nm);
  cfg.pump2_lambda_nm = jc.value("pump2_lambda_nm", cfg.pump2_lambda_nm);
  cfg.si_q = jc.value("si_q", cfg.si_q);
  cfg.si_lambda_nm = jc.value("si_lambda_nm", cfg.si_lambda_nm);
  cfg.pump_window_ghz = jc.value("pump_window_ghz", cfg.pump_window_ghz);
  cfg.grid = jc.value("grid", cfg.grid);
  cfg.span_factor = jc.value("span_factor", cfg.span_factor);

  const JsiGrid grid = jsi(cfg);
  const double pur = schmidt_purity(grid);

  json meta;
  meta["grid"] = cfg.grid;
  meta["pump_bandwidth_ghz"] = grid.pump_bandwidth_ghz;
  meta["purity"] = pur;
  meta["si_linewidth_ghz"] = grid.si_linewidth_ghz;
  meta["signal_ghz"] = std::vector<double>(
      grid.signal_ghz.data(), grid.signal_ghz.data() + grid.signal_ghz.size());
  meta["idler_ghz"] = std::vector<double>(
      grid.idler_ghz.data(), grid.idler_ghz.data() + grid.idler_ghz.size());
  emit(run, "jsi.csv", matrix_csv(grid.amplitude.cwiseAbs2()));
  emit(run, "jsi.json", meta.dump(2) + "\n");
  std::cout << "purity " << format_double(pur) << "\n";
  return 0;
}

RateParams rates_from(const json& cfg) {
  RateParams rp;
  if (cfg.contains("analyze") && cfg["analyze"].contains("rates")) {
    const json& r = cfg["analyze"]["rates"];
    rp.p = r.value("p", rp.p);
    rp.f = r.value("f", rp.f);
    if (r.contains("eta")) rp.eta = r.at("eta").get<std::vector<double>>();
    if (r.contains("dark")) rp.dark = r.at("dark").get<std::vector<double>>();
  }
  validate(rp);
  return rp;
}

json rates_json(const TwofoldRates& r) {
  json j;
  j["acc"] = r.acc;
  j["cc"] = r.cc;
  j["sc_i"] = r.sc_i;
  j["sc_s"] = r.sc_s;
  return j;
}

int cmd_analyze_rates(const Run& run) {
  const RateParams rp = rates_from(run.cfg);
  if (rp.eta.size() < 4)
    throw SpecError("fourfold rates need four detection efficiencies");
  const TwofoldRates ab = twofold_from_params(rp, 0, 1);
  const TwofoldRates cd = twofold_from_params(rp, 2, 3);
  const FourfoldEstimate ff = fourfold_rate(rp, ab, cd);

  json out;
  out["pair_ab"] = rates_json(ab);
  out["pair_cd"] = rates_json(cd);
  out["fourfold_parametric_hz"] = ff.parametric_hz;
  out["fourfold_parametric_per_hour"] = ff.parametric_hz * 3600.0;
  out["fourfold_anchored_hz"] = ff.anchored_hz;
  out["fourfold_anchored_per_hour"] = ff.anchored_hz * 3600.0;

  const json rj = run.cfg.contains("analyze")
                      ? run.cfg["analyze"].value("rates", json::object())
                      : json::object();
  if (rj.contains("delta_nu_ghz")) {
    const double dnu = rj.at("delta_nu_ghz").get<double>() * 1e9;
    const double fwhm = pulse_overlap_fwhm(dnu);
    out["overlap_fwhm_ps"] = fwhm * 1e12;
    std::vector<double> tau(301);
    for (int i = 0; i < 301; ++i) tau[i] = (i - 150) * (4.0 * fwhm / 300.0);
    emit(run, "overlap.csv", overlap_csv(pulse_overlap(tau, dnu)));
  }
  emit(run, "rates.json", out.dump(2) + "\n");
  std::cout << "fourfold per hour "
            << format_double(ff.parametric_hz * 3600.0) << "\n";
  return 0;
}

int cmd_analyze_klyshko(const Run& run) {
  if (!run.cfg.contains("analyze") || !run.cfg["analyze"].contains("klyshko"))
    throw SpecError("analyze.klyshko block missing from config");
  const json& k = run.cfg["analyze"]["klyshko"];
  const double sc_s = k.at("sc_s").get<double>();
  const double sc_i = k.at("sc_i").get<double>();
  const double cc = k.at("cc").get<double>();
  const double acc = k.value("acc", 0.0);
  std::pair<double, double> breakdown{0.0, 0.0};
  if (k.contains("singles_breakdown")) {
    breakdown.first = k["singles_breakdown"].at(0).get<double>();
    breakdown.second = k["singles_breakdown"].at(1).get<double>();
  }
  const KlyshkoEfficiency eff = klyshko(sc_s, sc_i, cc, acc, breakdown);
  json out;
  out["net"] = eff.net;
  out["raw"] = eff.raw;
  emit(run, "klyshko.json", out.dump(2) + "\n");
  std::cout << "raw " << format_double(eff.raw) << "  net "
            << format_double(eff.net) << "\n";
  return 0;
}

int cmd_analyze_fitloss(const Run& run) {
  const json fl = run.cfg.contains("analyze")
                      ? run.cfg["analyze"].value("fitloss", json::object())
                      : json::object();
  std::vector<TransmissionSample> samples;
  if (fl.contains("samples")) {
    for (const json& s : fl.at("samples"))
      samples.push_back({s.at(0).get<double>(), s.at(1).get<double>(),
                         s.at(2).get<double>()});
  } else {
    const double loss = fl.value("loss_db", 0.42);
    const double scale = fl.value("scale", 1.0);
    const int grid = fl.value("grid", 25);
    if (grid < 5) throw SpecError("fitloss grid must be >= 5");
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const double p1 = 2.0 * kPi * i / grid;
        const double p2 = 2.0 * kPi * j / grid;
        samples.push_back({p1, p2, interferometer_model(p1, p2, scale, loss)});
      }
  }
  const InterferometerFit fit = fit_interferometer(samples);
  json out;
  out["iterations"] = fit.iterations;
  out["loss_db"] = fit.loss_db;
  out["residual"] = fit.residual;
  out["samples"] = samples.size();
  out["scale"] = fit.scale;
  if (fl.contains("per_cross")) {
    const json& pc = fl.at("per_cross");
    out["per_cross_db"] =
        loss_per_cross(pc.at("loss_db").get<std::vector<double>>(),
                       pc.at("imbalance").get<std::vector<double>>());
  }
  emit(run, "fitloss.json", out.dump(2) + "\n");
  std::cout << "loss_db " << format_double(fit.loss_db) << "\n";
  return 0;
}

int cmd_presets_list() {
  std::cout << csv_line({"name", "ports", "modes", "pairs", "reference"})
            << csv_line({"bell2", "2", "4", "1", "psi2:<phi>"})
            << csv_line({"dicke4", "4", "8", "2", "psi4:<phi>"})
            << csv_line({"dicke8", "8", "16", "4", "D8m4"});
  return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("config", args.config_path, "JSON config file")->required();
  cmd->add_option("--phi", args.phi, "override source.phi (radians)")
      ->each([&args](const std::string&) { args.phi_set = true; });
  cmd->add_option("--seed", args.seed, "override tomography.seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out_dir, "override output directory")
      ->each([&args](const std::string&) { args.out_set = true; });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Simulator for dual-rail multiphoton interference experiments: "
      "pair sources, splitter networks, post-selection and rate analysis"};
  app.require_subcommand(1);

  std::vector<std::string> tail;
  for (int i = 1; i < argc; ++i) tail.emplace_back(argv[i]);

  CommonArgs args;
  int rc = 0;
  const auto runner = [&](int (*fn)(const Run&)) {
    return [&, fn]() { rc = fn(load_run(args, tail)); };
  };

  CLI::App* state =
      app.add_subcommand("state", "post-selected state, probability, fidelity");
  add_common(state, args);
  state->callback(runner(&cmd_state));

  CLI::App* sweep =
      app.add_subcommand("sweep", "outcome distributions over a phase grid");
  add_common(sweep, args);
  sweep->callback(runner(&cmd_sweep));

  CLI::App* tomo =
      app.add_subcommand("tomo", "simulated tomography and reconstruction");
  add_common(tomo, args);
  tomo->callback(runner(&cmd_tomo));

  CLI::App* analyze =
      app.add_subcommand("analyze", "fringe, spectral and rate analysis");
  analyze->require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Run&);
  };
  const Sub subs[] = {
      {"fringe", "two-detector fringes, visibilities, accidentals",
       &cmd_analyze_fringe},
      {"jsi", "joint spectral amplitude and purity", &cmd_analyze_jsi},
      {"rates", "twofold and fourfold rate estimates", &cmd_analyze_rates},
      {"klyshko", "heralding efficiency from measured rates",
       &cmd_analyze_klyshko},
      {"fitloss", "interferometer loss fit", &cmd_analyze_fitloss},
  };
  for (const Sub& s : subs) {
    CLI::App* c = analyze->add_subcommand(s.name, s.help);
    add_common(c, args);
    c->callback(runner(s.fn));
  }

  CLI::App* presets = app.add_subcommand("presets", "built-in circuit presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "list presets as CSV")->callback([&rc]() {
    rc = cmd_presets_list();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace dickesim
