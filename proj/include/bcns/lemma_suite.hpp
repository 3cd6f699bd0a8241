#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcns/littlewood_paley.hpp"
#include "bcns/spectral_field.hpp"

namespace bcns {

/// Ratio statistics of one inequality, measured on several grid sizes.
struct LemmaReport {
  std::string lemma;
  std::string params;
  std::vector<int> sizes;
  std::vector<double> max_by_size;
  std::vector<double> median_by_size;
  std::vector<double> min_by_size;
  /// Statistics on the largest grid.
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  /// Positive cases: bounded constant (max ratio within tolerance between
  /// consecutive sizes) and any exact bound respected. Negative cases: false.
  bool stable = false;
  /// Negative cases only: the max ratio grows by at least 25% per doubling of N.
  bool diverges = false;
  bool negative_case = false;
};

struct LemmaSuiteConfig {
  int d = 2;
  std::vector<int> sizes{32, 64};
  int trials = 100;
  std::uint64_t seed = 1;
};

class UnknownLemma : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ‖∇Δ_j f‖_{L²}/(2^j‖Δ_j f‖_{L²}) in [3/4, 8/3] (exact); ball derivative
/// growth ‖∇S_j f‖_{L^p}/(2^j‖S_j f‖_{L^p}); and ‖Δ_j f‖_{L^∞}/(2^{jd/2}‖Δ_j f‖_{L²}).
/// Sizes default to {16, 32, 64}; the L^∞ case uses a 20% tolerance.
std::vector<LemmaReport> check_bernstein(const LemmaSuiteConfig& config);

/// Paraproduct, remainder and product laws; includes the remainder with
/// s₁ + s₂ < 0 on a pair of oscillations at |k| ≈ N/4, whose ratio grows with N.
std::vector<LemmaReport> check_product_laws(const LemmaSuiteConfig& config);

/// Transport commutator Σ_j 2^{js}‖[u·∇, Δ_j]v‖_{L²} and the Leray commutator
/// [P, u·∇] summed over j <= 2, each in the general and divergence-free forms.
std::vector<LemmaReport> check_commutators(const LemmaSuiteConfig& config);

struct HeatRatios {
  double lhs_q1 = 0.0;    // μ‖u‖_{L̃¹(Ḃ^{τ+2}_{2,1})}
  double lhs_qinf = 0.0;  // ‖u‖_{L̃^∞(Ḃ^τ_{2,1})}
  double rhs = 0.0;       // ‖u₀‖_{Ḃ^τ_{2,1}} + ‖f‖_{L̃¹(Ḃ^τ_{2,1})}
};

/// One forced heat run on t ∈ [0, 1/μ] with f(t) = μcos(μt)·profile.
HeatRatios heat_regularity_ratios(const SpectralField& u0, const SpectralField& profile, double mu,
                                  const DyadicBands& bands, double tau = 0.0);

/// Forced heat flow u_t − μΔu = f over μ ∈ mu_values with horizon T₀/μ and
/// forcing μF(μt), for (q₁, q₂) ∈ {(1,1), (∞,1)}. Stable means uniform in μ
/// and in N within 25%.
std::vector<LemmaReport> check_heat_regularity(const LemmaSuiteConfig& config,
                                               const std::vector<double>& mu_values = {0.1, 1.0, 10.0});

/// ‖G(f)‖_{Ḃ^s_{p,1}}/‖f‖_{Ḃ^s_{p,1}} for G(f) = (1+f)^{γ−1} − 1 and ‖f‖_{L^∞} = 0.3,
/// at s = 1/2 and p ∈ {2, 4} for each γ.
std::vector<LemmaReport> check_composition(const LemmaSuiteConfig& config,
                                           const std::vector<double>& gamma_values = {1.4, 3.0});

/// Besov norms of v₀ = sin(x₁/ε)·φ(x) for ε = 2^{−m}.
struct OscillatoryTable {
  int d = 2;
  int n = 0;
  double p = 2.0;
  double nu = 1.0;
  std::vector<int> m;
  std::vector<double> epsilon;
  /// ‖v₀^ℓ‖_{Ḃ^{d/2−1}_{2,1}} + ‖v₀^h‖_{Ḃ^{d/p−1}_{p,1}}, split at 2^jν <= 1
  std::vector<double> norm;
  /// Least-squares slope of log norm against log ε over m >= 1.
  double slope = 0.0;
};

/// m runs over 0..m_max (m = 0 is the ε = 1 baseline). The grid size must
/// resolve 2^{m_max} inside the 2/3 ball.
OscillatoryTable oscillatory_table(int d, int n, double p, int m_max = 5, double nu = 1.0);

/// Reports |slope − (1 − d/p)| <= 0.1 as stable, for p ∈ {2, 4}.
std::vector<LemmaReport> check_oscillatory_scaling(const LemmaSuiteConfig& config,
                                                   const std::vector<double>& p_values = {2.0, 4.0});

/// Identifiers accepted by run_lemmas.
const std::vector<std::string>& lemma_ids();

/// Runs the named checks in order; throws UnknownLemma for an unknown id.
std::vector<LemmaReport> run_lemmas(const std::vector<std::string>& ids, const LemmaSuiteConfig& config);

/// `lemma,params,max_ratio,median_ratio,stable`
void write_lemmas_csv(const std::string& path, const std::vector<LemmaReport>& reports);

}  // namespace bcns
