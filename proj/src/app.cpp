#include "bcns/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "bcns/calculus.hpp"
#include "bcns/diagnostics.hpp"
#include "bcns/initial_data.hpp"
#include "bcns/lemma_suite.hpp"
#include "bcns/littlewood_paley.hpp"
#include "bcns/operators.hpp"
#include "bcns/snapshot.hpp"

namespace bcns {
namespace {

namespace fs = std::filesystem;

// Maps the error taxonomy onto exit codes.
template <class Fn>
int guarded(Streams io, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FitError& e) {
    io.err << "error: fit failed: " << e.what() << '\n';
    return kExitFit;
  } catch (const BlowUp& e) {
    io.err << "error: blow-up: " << e.what() << '\n';
    return kExitBlowUp;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

fs::path snapshot_name(const fs::path& dir, const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04zu.snap", stem, i);
  return dir / buf;
}

Trajectory prefix(const Trajectory& t, std::size_t count) {
  Trajectory out = t;
  if (count < out.snapshots.size()) {
    out.snapshots.erase(out.snapshots.begin() + static_cast<std::ptrdiff_t>(count), out.snapshots.end());
  }
  return out;
}

void log_run(std::ostream& log, const std::string& tag, const Trajectory& t) {
  for (const Event& e : t.events) log << tag << ' ' << e.line() << '\n';
  log << tag << " termination=" << (t.termination == Termination::horizon ? "horizon" : "blowup")
      << " steps=" << t.steps << " snapshots=" << t.snapshots.size() << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

SpectralField initial_velocity(const RunConfig& config) {
  const Grid g = make_grid(config.d, config.n);
  SpectralField v(g, Rank::vector);
  switch (config.initial.kind) {
    case InitialKind::taylor_green:
      v = taylor_green(g);
      break;
    case InitialKind::oscillatory:
      try {
        v = oscillatory(g, config.initial.epsilon);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("initial", 0, e.what());
      }
      break;
    case InitialKind::random:
      v = random_field(g, Rank::vector, config.seed, 0, {.decay = config.initial.decay});
      break;
    case InitialKind::file: {
      const Snapshot snap = [&] {
        try {
          return read_snapshot(config.initial.path);
        } catch (const std::exception& e) {
          throw ConfigError("initial", 0, e.what());
        }
      }();
      if (snap.field.grid() != g || snap.field.rank() != Rank::vector) {
        throw ConfigError("initial", 0, config.initial.path.string() + " is not a vector field on the configured grid");
      }
      v = snap.field;
      break;
    }
  }
  v *= config.amplitude;
  if (config.perturbation != 0.0) v += compressible_mode(g, config.perturbation);
  return v;
}

int cmd_simulate(const RunConfig& config, Streams io, const SolverHooks& hooks) {
  return guarded(io, [&] {
    const PhysicalParams params = config.params();
    params.validate();
    const StepperConfig stepper = config.stepper();
    const SpectralField v0 = initial_velocity(config);
    const Grid& g = v0.grid();

    const fs::path snaps = config.output_dir / "snapshots";
    fs::create_directories(snaps);
    std::ofstream log = open_out(config.output_dir / "events.log");

    Trajectory cns, ins;
    const bool run_c = config.solver != SolverChoice::ins;
    const bool run_i = config.solver != SolverChoice::cns;
    if (run_c) {
      FlowState start{SpectralField(g, Rank::scalar), v0, 0.0};
      cns = hooks.cns(std::move(start), params, stepper, config.horizon);
      log_run(log, "cns", cns);
      for (std::size_t i = 0; i < cns.snapshots.size(); ++i) {
        const FlowState& s = cns.snapshots[i];
        write_snapshot(snapshot_name(snaps, "cns_a", i), s.a, s.t);
        write_snapshot(snapshot_name(snaps, "cns_v", i), s.v, s.t);
      }
    }
    if (run_i) {
      ins = hooks.ins(leray_project(v0), config.mu, stepper, config.horizon);
      log_run(log, "ins", ins);
      for (std::size_t i = 0; i < ins.snapshots.size(); ++i) {
        write_snapshot(snapshot_name(snaps, "ins_v", i), ins.snapshots[i].v, ins.snapshots[i].t);
      }
    }

    if (run_c && run_i) {
      const std::size_t common = std::min(cns.snapshots.size(), ins.snapshots.size());
      if (common >= 2) {
        const DyadicBands bands = build_partition(g);
        const NormLedger ledger = norm_ledger(prefix(cns, common), prefix(ins, common), params, config.p, bands);
        write_ledger_csv((config.output_dir / "ledger.csv").string(), ledger);
        if (!ledger.warning.empty()) io.err << "warning: " << ledger.warning << '\n';
        io.out << "hypothesis lhs " << format_double(ledger.hypothesis_lhs) << " rhs "
               << format_double(ledger.hypothesis_rhs) << '\n';
      } else {
        io.err << "warning: fewer than two common snapshots, ledger.csv not written\n";
      }
    }

    const bool blew_up = (run_c && cns.termination == Termination::blowup) ||
                         (run_i && ins.termination == Termination::blowup);
    if (blew_up) {
      io.err << "error: blow-up, see " << (config.output_dir / "events.log").string() << '\n';
      return kExitBlowUp;
    }
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, Streams io, const SolverHooks& hooks) {
  return guarded(io, [&] {
    if (config.nu_list.size() < 3) throw ConfigError("nu_list", 0, "a sweep needs at least 3 values for the fit");
    const StepperConfig stepper = config.stepper();
    const SpectralField v0 = initial_velocity(config);
    const Grid& g = v0.grid();
    const DyadicBands bands = build_partition(g);

    fs::create_directories(config.output_dir);
    std::ofstream log = open_out(config.output_dir / "events.log");

    const Trajectory ins = hooks.ins(leray_project(v0), config.mu, stepper, config.horizon);
    log_run(log, "ins", ins);
    if (ins.termination == Termination::blowup) throw BlowUp("incompressible reference run blew up");

    SweepResult sweep;
    for (double nu : config.nu_list) {
      const PhysicalParams params = config.params_for_nu(nu);
      params.validate();
      FlowState start{SpectralField(g, Rank::scalar), v0, 0.0};
      const Trajectory cns = hooks.cns(std::move(start), params, stepper, config.horizon);
      log_run(log, "cns nu=" + format_double(nu), cns);
      if (cns.termination == Termination::blowup) {
        io.err << "warning: run with nu=" << format_double(nu) << " blew up and is excluded from the fit\n";
        continue;
      }
      sweep.nu_values.push_back(nu);
      sweep.errors.push_back(limit_error(cns, ins, config.p, bands, config.mu, nu));
    }
    write_sweep_csv((config.output_dir / "sweep.csv").string(), sweep);

    std::vector<double> sup;
    for (const LimitError& e : sweep.errors) sup.push_back(e.sup);
    sweep.fit = fit_rate(sweep.nu_values, sup);
    write_fit_txt((config.output_dir / "fit.txt").string(), sweep.fit);
    io.out << "slope " << format_double(sweep.fit.slope) << " residual " << format_double(sweep.fit.residual) << '\n';
    return kExitOk;
  });
}

int cmd_lemmas(const RunConfig& config, Streams io) {
  return guarded(io, [&] {
    LemmaSuiteConfig suite;
    suite.d = config.d;
    suite.sizes = config.lemma_sizes;
    suite.trials = config.lemma_trials;
    suite.seed = config.seed;
    const std::vector<std::string>& ids = config.lemmas.empty() ? lemma_ids() : config.lemmas;
    std::vector<LemmaReport> reports;
    try {
      reports = run_lemmas(ids, suite);
    } catch (const UnknownLemma& e) {
      throw ConfigError("lemmas", 0, e.what());
    }
    fs::create_directories(config.output_dir);
    write_lemmas_csv((config.output_dir / "lemmas.csv").string(), reports);
    for (const LemmaReport& r : reports) {
      const char* verdict = r.negative_case ? (r.diverges ? "diverges" : "bounded") : (r.stable ? "stable" : "unstable");
      io.out << r.lemma << ' ' << r.params << ' ' << verdict << '\n';
    }
    return kExitOk;
  });
}

int cmd_norms(const fs::path& snapshot, double s, double p, double r, Streams io) {
  return guarded(io, [&] {
    if (!(p >= 1.0)) throw ConfigError("p", 0, "must be at least 1");
    if (!(r >= 1.0)) throw ConfigError("r", 0, "must be at least 1");
    const Snapshot snap = read_snapshot(snapshot);
    const DyadicBands bands = build_partition(snap.field.grid());
    const std::vector<double> norms = band_norms(snap.field, p, bands);
    io.out << "j,value\n";
    for (std::size_t i = 0; i < norms.size(); ++i) {
      const int j = bands.j_min() + static_cast<int>(i);
      io.out << j << ',' << format_double(std::exp2(j * s) * norms[i]) << '\n';
    }
    io.out << "total," << format_double(weighted_band_sum(norms, s, r, bands.j_min())) << '\n';
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Compressible Navier-Stokes incompressible-limit experiments", "bcns"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string snapshot;
  double s = 0.0, p = 2.0, r = 1.0;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (key = value)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "random seed (overrides seed)");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "run the solvers and write snapshots, ledger.csv, events.log");
  CLI::App* sweep = app.add_subcommand("sweep", "nu sweep: sweep.csv and fit.txt");
  CLI::App* lemmas = app.add_subcommand("lemmas", "lemma property suite: lemmas.csv");
  for (CLI::App* sub : {simulate, sweep, lemmas}) add_run_flags(sub);
  CLI::App* norms = app.add_subcommand("norms", "band table of a snapshot");
  norms->add_option("snapshot", snapshot, "snapshot file")->required();
  norms->add_option("--s", s, "regularity index")->capture_default_str();
  norms->add_option("--p", p, "integrability index")->capture_default_str();
  norms->add_option("--r", r, "summation index")->capture_default_str();

  std::vector<std::string> argv_store{"bcns"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (norms->parsed()) return cmd_norms(snapshot, s, p, r, io);

  RunConfig config;
  const int loaded = guarded(io, [&] {
    config = load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (simulate->parsed() || sweep->parsed() || lemmas->parsed()) {
      for (CLI::App* sub : {simulate, sweep, lemmas}) {
        if (sub->parsed() && sub->count("--seed") > 0) config.seed = seed;
      }
    }
    return kExitOk;
  });
  if (loaded != kExitOk) return loaded;

  if (simulate->parsed()) return cmd_simulate(config, io);
  if (sweep->parsed()) return cmd_sweep(config, io);
  return cmd_lemmas(config, io);
}

}  // namespace bcns
