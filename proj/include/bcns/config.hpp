#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcns/solvers.hpp"

namespace bcns {

/// Parse or validation failure. `key` is empty for syntax errors that do not
/// reach a key; `line` is 0 for values that did not come from a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class InitialKind { taylor_green, oscillatory, random, file };

/// Initial velocity preset; the initial density deviation is always zero.
struct InitialSpec {
  InitialKind kind = InitialKind::taylor_green;
  double epsilon = 0.25;        ///< oscillatory(ε)
  double decay = -1.0;          ///< random(s): envelope |k|^{−s}; < 0 selects d/2 + 1
  std::filesystem::path path;  ///< file(path): a vector snapshot
};

enum class SolverChoice { both, cns, ins };

struct RunConfig {
  int d = 2;
  int n = 64;
  double mu = 1.0;
  double lambda = 0.0;
  std::vector<double> nu_list;
  double gamma = 1.0;
  double p = 2.0;
  double horizon = 1.0;
  double cfl = 0.4;
  double dt_max = 0.01;
  double snapshot_stride = 0.1;
  double vacuum_floor = 0.1;
  std::uint64_t seed = 1;
  InitialSpec initial;
  double amplitude = 1.0;     ///< multiplies the preset velocity
  double perturbation = 0.0;  ///< adds perturbation·(sin x₁, 0[, 0])
  SolverChoice solver = SolverChoice::both;
  std::vector<std::string> lemmas;  ///< empty: every lemma
  int lemma_trials = 100;
  std::vector<int> lemma_sizes{32, 64};
  std::filesystem::path output_dir = "out";

  PhysicalParams params() const { return {mu, lambda, gamma}; }
  PhysicalParams params_for_nu(double nu) const { return {mu, nu - 2.0 * mu, gamma}; }
  StepperConfig stepper() const;
};

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
/// Unknown and repeated keys are errors. Relative file(...) paths resolve
/// against `base_dir`.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = ".");

/// Reads and parses a file; relative paths inside resolve against its directory.
RunConfig load_config(const std::filesystem::path& path);

/// Accepted keys.
const std::vector<std::string>& config_keys();

}  // namespace bcns
