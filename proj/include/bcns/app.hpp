#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "bcns/config.hpp"
#include "bcns/solvers.hpp"

namespace bcns {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitFit = 4;

/// Solver entry points used by the commands; tests substitute stubs.
struct SolverHooks {
  std::function<Trajectory(FlowState, const PhysicalParams&, const StepperConfig&, double)> cns = run_cns;
  std::function<Trajectory(SpectralField, double, const StepperConfig&, double)> ins = run_ins;
};

/// Initial velocity of a config (preset times amplitude plus the curl-free perturbation).
/// Throws ConfigError for a file(...) snapshot that does not match d, N or rank.
SpectralField initial_velocity(const RunConfig& config);

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// Snapshots under <out>/snapshots, ledger.csv (both solvers only) and events.log.
int cmd_simulate(const RunConfig& config, Streams io, const SolverHooks& hooks = {});

/// One incompressible run from Pv₀ and one compressible run per ν from
/// (0, v₀); writes sweep.csv, fit.txt and events.log. Blown-up members are
/// logged and left out of both files.
int cmd_sweep(const RunConfig& config, Streams io, const SolverHooks& hooks = {});

/// lemmas.csv for the configured lemma ids.
int cmd_lemmas(const RunConfig& config, Streams io);

/// Prints `j,<2^{js}‖Δ_j f‖_{L^p}>` per band and `total,<‖f‖_{Ḃ^s_{p,r}}>`.
int cmd_norms(const std::filesystem::path& snapshot, double s, double p, double r, Streams io);

/// Full command line: `bcns <simulate|sweep|lemmas|norms> ...`.
int run_cli(const std::vector<std::string>& args, Streams io);

}  // namespace bcns
