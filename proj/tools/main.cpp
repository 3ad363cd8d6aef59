// Copyright 2026 The gcpcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gcpcert command-line front end.
//
// Exit status: 0 success, 2 invalid input, 3 solver could not certify its
// result, 4 internal invariant breach.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcpcert/classical_model.hpp"
#include "gcpcert/mimicry.hpp"
#include "gcpcert/network.hpp"
#include "gcpcert/records.hpp"
#include "gcpcert/simulator.hpp"
#include "gcpcert/tomography.hpp"

namespace {

using namespace gcpcert;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNotCertified = 3;
constexpr int kExitInvariant = 4;

struct NotCertified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string optional_text(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

struct AngleOptions {
  std::string theta = "0";
  std::string phi = "pi/4";

  void attach(CLI::App* cmd) {
    cmd->add_option("--theta", theta, "Observable rotation angle theta (accepts pi, pi/4, ...)")
        ->capture_default_str();
    cmd->add_option("--phi", phi, "Observable rotation angle phi")->capture_default_str();
  }
  double theta_value() const { return parse_real(theta); }
  double phi_value() const { return parse_real(phi); }
  ObservableTriple observables() const { return rotated_observables(theta_value(), phi_value()); }
};

struct SolverOptions {
  SolverConfig cfg;
  bool relaxed = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--solver-tolerance", cfg.tolerance, "Target duality gap")->capture_default_str();
    cmd->add_option("--max-iterations", cfg.max_iterations, "Newton iteration budget")->capture_default_str();
    cmd->add_option("--certify-gap", cfg.certify_gap, "Largest gap accepted as certified")->capture_default_str();
    cmd->add_flag("--relaxed-marginals", relaxed, "Drop the uniform input-marginal constraints");
  }
  SolverConfig config() const {
    SolverConfig c = cfg;
    c.marginals = relaxed ? MarginalMode::Relaxed : MarginalMode::Uniform;
    return c;
  }
};

// thresholds ----------------------------------------------------------------

struct ThresholdsCmd {
  AngleOptions angles;
  SolverOptions solver;
  bool scan = false;
  std::string theta_grid = "0:pi:25";
  std::string phi_grid = "0:pi:25";
  bool recompute = false;
  std::size_t n_max = 4;
  unsigned threads = 0;

  int run() const {
    const ObservableTriple obs = angles.observables();
    if (scan) return run_scan();
    if (n_max == 0) throw ValidationError("--n-max must be at least 1");
    const ThresholdSet published = threshold_table(n_max);
    std::optional<ThresholdSet> live;
    if (recompute) {
      const SolverResult r = maximize_gcp_fidelity(obs, solver.config());
      std::cerr << "solver: value=" << format_number(r.value) << " duality_gap=" << format_number(r.duality_gap)
                << " lp_bound=" << format_number(r.lp_bound) << " newton_steps=" << r.iterations
                << " certified=" << bool_text(r.certified) << "\n";
      if (!r.certified) throw NotCertified("optimizer did not certify F_GC12");
      live = threshold_table(n_max, ThresholdSet::from_chi_gc(r.chi));
    }
    CsvTable t;
    t.header = {"quantity", "published"};
    if (live) t.header.push_back("recomputed");
    auto add = [&](const std::string& name, double pub, std::optional<double> rec) {
      std::vector<std::string> row = {name, format_number(pub)};
      if (live) row.push_back(format_number(*rec));
      t.rows.push_back(std::move(row));
    };
    const auto opt = [&](double ThresholdSet::*field) -> std::optional<double> {
      if (!live) return std::nullopt;
      return (*live).*field;
    };
    add("f_gc12", published.f_gc12, opt(&ThresholdSet::f_gc12));
    add("f_gc1given2", published.f_gc1given2, opt(&ThresholdSet::f_gc1given2));
    add("f_c12", published.f_c12, opt(&ThresholdSet::f_c12));
    add("f_gc1givenC2", published.f_gc1givenC2, opt(&ThresholdSet::f_gc1givenC2));
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::optional<double> rec;
      if (live) rec = live->f_gc1givenN_table[n - 1];
      add("f_gc1givenN=" + std::to_string(n), published.f_gc1givenN_table[n - 1], rec);
    }
    std::cout << to_csv(t);
    return kExitOk;
  }

  int run_scan() const {
    const ThresholdSurface s =
        scan_thresholds(parse_grid(theta_grid), parse_grid(phi_grid), solver.config(), threads);
    CsvTable t;
    t.header = {"theta", "phi", "f_gc", "certified"};
    for (const ScanPoint& pt : s.points)
      t.rows.push_back({format_number(pt.theta), format_number(pt.phi), format_number(pt.f_gc), bool_text(pt.certified)});
    std::cout << to_csv(t);
    std::cerr << "minimum=" << format_number(s.minimum) << " at";
    for (const ScanPoint& pt : s.minimizers) std::cerr << " (" << format_number(pt.theta) << ", " << format_number(pt.phi) << ")";
    std::cerr << "\n";
    if (s.uncertified > 0) throw NotCertified(std::to_string(s.uncertified) + " grid points were not certified");
    return kExitOk;
  }
};

// tomography ----------------------------------------------------------------

struct TomographyCmd {
  AngleOptions angles;
  std::string input;
  bool counts = false;
  bool probs = false;
  bool renormalize = false;
  bool project_physical = false;

  int run() const {
    const std::string text = read_text_file(input);
    ConditionalProbTable table =
        counts ? estimate_conditional_probs(parse_count_table(text)) : parse_probability_table(text);
    if (renormalize) {
      NormalizationReport rep;
      table = renormalize_table(table, &rep);
      std::cerr << "renormalized " << rep.adjusted_pairs
                << " pairs, largest adjustment " << format_number(rep.max_adjustment) << "\n";
    }
    ProcessMatrix chi = tomograph(table, angles.observables());
    const bool physical = chi.is_physical();
    if (!physical) std::cerr << "warning: reconstructed process matrix is not positive semidefinite\n";
    if (!physical && project_physical) {
      chi = project_to_physical(chi);
      std::cerr << "projected onto the positive semidefinite cone\n";
    }
    RecordMetadata meta;
    meta.theta = angles.theta_value();
    meta.phi = angles.phi_value();
    meta.provenance = counts ? "tomography:counts" : "tomography:probs";
    if (!physical && project_physical) meta.provenance += "+projected";
    meta.fidelity_vs_ideal = process_fidelity(chi, ideal_process_matrix());
    std::cout << encode_process_matrix(chi, meta);
    return kExitOk;
  }
};

// classify ------------------------------------------------------------------

struct ClassifyCmd {
  AngleOptions angles;
  SolverOptions solver;
  std::optional<double> f12;
  std::optional<double> f1given2;
  std::optional<double> f112;
  std::string thresholds = "paper";

  int run() const {
    ThresholdSet th;
    if (thresholds == "recomputed") {
      const SolverResult r = maximize_gcp_fidelity(angles.observables(), solver.config());
      if (!r.certified) throw NotCertified("optimizer did not certify F_GC12");
      th = ThresholdSet::from_chi_gc(r.chi);
    } else if (thresholds != "paper") {
      throw ValidationError("--thresholds must be 'paper' or 'recomputed'");
    }
    std::cout << encode_verdict(classify({f12, f1given2, f112}, th));
    return kExitOk;
  }
};

// compose -------------------------------------------------------------------

struct ComposeCmd {
  std::vector<std::string> chain;

  int run() const {
    if (chain.empty()) throw ValidationError("--chain needs at least one file");
    std::optional<ProcessMatrix> acc;
    for (const std::string& path : chain) {
      const ProcessMatrix chi = decode_process_matrix(read_text_file(path)).chi;
      acc = acc ? compose(*acc, chi) : chi;
    }
    RecordMetadata meta;
    meta.provenance = "compose:" + std::to_string(chain.size());
    meta.fidelity_vs_ideal = process_fidelity(*acc, ideal_process_matrix());
    std::cout << encode_process_matrix(*acc, meta);
    return kExitOk;
  }
};

// simulate ------------------------------------------------------------------

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_real(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct SimulateCmd {
  AngleOptions angles;
  std::string links;
  std::string grid;
  bool tolerance_curve = false;
  std::string criterion = "exptN";
  std::size_t max_n = 10;
  unsigned threads = 0;

  int run() const {
    const ObservableTriple obs = angles.observables();
    if (tolerance_curve) return run_curve(obs);
    if (!grid.empty()) return run_fig3(obs);
    if (links.empty()) throw ValidationError("simulate needs --links, --grid or --tolerance-curve");
    const NetworkReport rep = network_fidelities(NetworkSpec{parse_list(links)}, obs);
    CsvTable t;
    t.header = {"links", "f_expt1givenN", "f_expt11N", "f_expt12", "f_expt112"};
    t.rows.push_back({std::to_string(rep.link_chi.size()), format_number(rep.f_expt1givenN),
                      format_number(rep.f_expt11N), optional_text(rep.f_expt12), optional_text(rep.f_expt112)});
    std::cout << to_csv(t);
    return kExitOk;
  }

  int run_fig3(const ObservableTriple& obs) const {
    const std::vector<Fig3Row> rows = fig3_curves(parse_grid(grid), obs, ThresholdSet::published(), threads);
    CsvTable t;
    t.header = {"p", "f_expt12", "f_expt1given2", "f_expt112", "band", "bands",
                "bell_nonlocal", "nonbilocal", "steering", "nonlocality_steering"};
    for (const Fig3Row& r : rows) {
      std::string bands;
      for (const std::string& b : r.verdict.bands) bands += (bands.empty() ? "" : ";") + b;
      t.rows.push_back({format_number(r.p), format_number(r.f_expt12), format_number(r.f_expt1given2),
                        format_number(r.f_expt112), r.verdict.band, bands, bool_text(r.verdict.bell_nonlocal),
                        bool_text(r.verdict.nonbilocal), bool_text(r.verdict.steering),
                        bool_text(r.verdict.nonlocality_steering)});
    }
    std::cout << to_csv(t);
    return kExitOk;
  }

  int run_curve(const ObservableTriple& obs) const {
    if (max_n == 0) throw ValidationError("--max-n must be at least 1");
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= max_n; ++n) ns.push_back(n);
    const NoiseToleranceCurve c = noise_tolerance_curve(parse_noise_criterion(criterion), ns, obs,
                                                        ThresholdSet::published(), threads);
    CsvTable t;
    t.header = {"n", "criterion", "threshold", "p_star", "saturated"};
    for (const NoiseTolerance& pt : c.points)
      t.rows.push_back({std::to_string(pt.n), criterion, format_number(pt.threshold), optional_text(pt.p_star),
                        bool_text(pt.saturated)});
    std::cout << to_csv(t);
    std::cerr << "p_star nonincreasing in N: " << bool_text(c.monotone_nonincreasing) << "\n";
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify quantum teleportation against genuinely classical mimicry"};
  app.require_subcommand(1);

  ThresholdsCmd thresholds;
  auto* th = app.add_subcommand("thresholds", "Classical fidelity thresholds or the threshold surface");
  thresholds.angles.attach(th);
  thresholds.solver.attach(th);
  th->add_flag("--scan", thresholds.scan, "Scan F_GC over an (theta, phi) grid");
  th->add_option("--theta-grid", thresholds.theta_grid, "Theta grid a:b:n")->capture_default_str();
  th->add_option("--phi-grid", thresholds.phi_grid, "Phi grid a:b:n")->capture_default_str();
  th->add_flag("--recompute", thresholds.recompute, "Recompute thresholds with the optimizer");
  th->add_option("--n-max", thresholds.n_max, "Largest N for F_GC1|N")->capture_default_str();
  th->add_option("--threads", thresholds.threads, "Worker threads (0 = all cores)")->capture_default_str();

  TomographyCmd tomo;
  auto* tm = app.add_subcommand("tomography", "Process tomography from a probability or count table");
  tomo.angles.attach(tm);
  tm->add_option("--input", tomo.input, "JSON table file")->required();
  auto* counts_flag = tm->add_flag("--counts", tomo.counts, "Input holds outcome counts");
  auto* probs_flag = tm->add_flag("--probs", tomo.probs, "Input holds conditional probabilities");
  counts_flag->excludes(probs_flag);
  tm->add_flag("--renormalize", tomo.renormalize, "Rescale each outcome pair to sum to 1");
  tm->add_flag("--project-physical", tomo.project_physical,
               "Clip negative eigenvalues of a non-positive reconstruction");
  tm->callback([&] {
    if (!tomo.counts && !tomo.probs) throw CLI::ValidationError("tomography", "one of --counts or --probs is required");
  });

  ClassifyCmd cls;
  auto* cl = app.add_subcommand("classify", "Place measured fidelities in the correlation hierarchy");
  cls.angles.attach(cl);
  cls.solver.attach(cl);
  cl->add_option("--f12", cls.f12, "F_expt12");
  cl->add_option("--f1given2", cls.f1given2, "F_expt1|2");
  cl->add_option("--f112", cls.f112, "F_expt112");
  cl->add_option("--thresholds", cls.thresholds, "paper or recomputed")->capture_default_str();

  ComposeCmd comp;
  auto* co = app.add_subcommand("compose", "Compose process-matrix records, first file applied first");
  co->add_option("--chain", comp.chain, "Process matrix record files")->required();

  SimulateCmd sim;
  auto* si = app.add_subcommand("simulate", "Simulate teleportation networks with Werner noise");
  sim.angles.attach(si);
  si->add_option("--links", sim.links, "Comma-separated noise intensity per link");
  si->add_option("--grid", sim.grid, "Noise grid a:b:n for the three-node curves");
  si->add_flag("--tolerance-curve", sim.tolerance_curve, "Noise tolerance p* against N");
  si->add_option("--criterion", sim.criterion, "exptN or expt11N")->capture_default_str();
  si->add_option("--max-n", sim.max_n, "Largest N for the tolerance curve")->capture_default_str();
  si->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*th) return thresholds.run();
    if (*tm) return tomo.run();
    if (*cl) return cls.run();
    if (*co) return comp.run();
    if (*si) return sim.run();
  } catch (const NotCertified& e) {
    std::cerr << "not certified: " << e.what() << "\n";
    return kExitNotCertified;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInvariant;
}
