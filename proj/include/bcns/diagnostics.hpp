#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcns/littlewood_paley.hpp"
#include "bcns/solvers.hpp"

namespace bcns {

/// w = Qu + ν⁻¹(−Δ)⁻¹∇a. The mean of a is removed first. Throws for ν <= 0.
SpectralField effective_velocity(const SpectralField& a, const SpectralField& u, double nu);

/// Fields entering the source terms at one instant: u = v − V and the time
/// derivatives of V, Pu and Qu.
struct SourceFields {
  SpectralField a;
  SpectralField u;
  SpectralField V;
  SpectralField V_t;
  SpectralField Pu_t;
  SpectralField Qu_t;
};

/// H₁ = a(V_t + Pu_t + (Qu_t + ∇a)) + (1+a)(u+V)·∇(u+V) + (k(a) − a)∇a.
struct H1Terms {
  std::array<SpectralField, 3> terms;
  SpectralField sum() const;
};

/// H₂ split into its six terms:
///   1: a(V_t + Pu_t + (Qu_t + ∇a))     2: (1+a) Pu·∇(V + Qu)
///   3: a(u+V)·∇Pu                      4: (u+V)·∇Pu
///   5: (1+a)(V·∇Qu + Qu·∇V)            6: a(Qu·∇Qu + V·∇V)
struct H2Terms {
  std::array<SpectralField, 6> terms;
  SpectralField sum() const;
};

H1Terms assemble_H1(const SourceFields& f, const PhysicalParams& params);
H2Terms assemble_H2(const SourceFields& f, const PhysicalParams& params);

/// d/dt of a sampled series: three-point centered differences inside,
/// three-point one-sided differences at the ends (second order on
/// nonuniform times). Two samples give the plain difference quotient.
std::vector<SpectralField> time_derivative(std::span<const double> times, std::span<const SpectralField> fields);

/// Raised when a compressible and an incompressible trajectory cannot be compared.
class TrajectoryMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Snapshot-wise split of a compressible run against its incompressible reference.
struct Decomposed {
  std::vector<double> times;
  std::vector<SpectralField> a, u, V, Pu, Qu;
  std::vector<SpectralField> a_t, V_t, Pu_t, Qu_t;

  SourceFields source(std::size_t i) const;
};

/// Throws TrajectoryMismatch unless both runs share grid and snapshot times
/// (to 1e−12) and have at least two snapshots.
Decomposed decompose(const Trajectory& cns, const Trajectory& ins);

/// Ḃ^{d/2−1}_{2,1} norms of the residuals of
///   a_t + div Qu + div(a(u+V)) = 0,
///   (Qu)_t − νΔQu + ∇a + QH₁ = 0,
///   (Pu)_t − μΔPu + PH₂ = 0,
/// with time derivatives from the snapshots.
struct Residual {
  double t = 0.0;
  double density = 0.0;
  double compressible = 0.0;
  double incompressible = 0.0;
};

std::vector<Residual> decomposition_residual(const Trajectory& cns, const Trajectory& ins,
                                             const PhysicalParams& params, const DyadicBands& bands);

/// Running values of the energy functionals at every snapshot time T.
/// Low/high frequency split at 2^jν <= 1; low frequencies in Ḃ·_{2,1},
/// high frequencies in Ḃ·_{p,1}. Sup-in-time terms are running maxima of
/// each listed norm, integral terms use the trapezoid rule.
///   X  = ‖(a^ℓ, ν∇a^ℓ, Qu^ℓ)‖_{L^∞(Ḃ^{d/2−1}_{2,1})} + ‖νa^h‖_{L^∞(Ḃ^{d/p}_{p,1})} + ‖Qu^h‖_{L^∞(Ḃ^{d/p−1}_{p,1})}
///   Y  = ‖(νa^ℓ, ν²∇a^ℓ, νQu^ℓ)‖_{L¹(Ḃ^{d/2+1}_{2,1})} + ‖a^h‖_{L¹(Ḃ^{d/p}_{p,1})} + ‖νQu^h‖_{L¹(Ḃ^{d/p+1}_{p,1})}
///        + ‖(Qu_t + ∇a)^ℓ‖_{L¹(Ḃ^{d/2−1}_{2,1})} + ‖(Qu_t + ∇a)^h‖_{L¹(Ḃ^{d/p−1}_{p,1})}
///   Z  = ‖Pu‖_{L^∞(Ḃ^{d/p−1}_{p,1})}
///   W  = ‖Pu_t‖_{L¹(Ḃ^{d/p−1}_{p,1})} + ‖Pu‖_{L¹(Ḃ^{d/p+1}_{p,1})}
///   𝒱  = ‖V‖_{L^∞(Ḃ^{d/p−1}_{p,1})} + ‖V_t‖_{L¹(Ḃ^{d/p−1}_{p,1})} + ‖V‖_{L¹(Ḃ^{d/p+1}_{p,1})}
/// M is 𝒱 with the dissipation term weighted by μ, over the whole run.
struct NormLedger {
  std::vector<double> t, X, Y, Z, W, Vcal;
  double M = 0.0;
  /// Left and right sides of the smallness hypothesis with C = 1:
  /// ‖a₀^ℓ‖_{Ḃ^{d/2−1}_{2,1}} + ν‖a₀^ℓ‖_{Ḃ^{d/2}_{2,1}} + ν‖a₀^h‖_{Ḃ^{d/p}_{p,1}}
  ///   + ‖Qv₀^ℓ‖_{Ḃ^{d/2−1}_{2,1}} + ‖Qv₀^h‖_{Ḃ^{d/p−1}_{p,1}} + M² + μ²
  /// against √(μν)·exp(−(M + M²)). Reported only.
  double hypothesis_lhs = 0.0;
  double hypothesis_rhs = 0.0;
  /// Nonempty when p lies outside the admissible range.
  std::string warning;
};

/// Admissible integrability: 2 <= p < 4 for d = 2, 2 <= p <= min(4, 2d/(d−2)) otherwise.
bool admissible_p(int d, double p);

NormLedger norm_ledger(const Trajectory& cns, const Trajectory& ins, const PhysicalParams& params, double p,
                       const DyadicBands& bands);

/// The four blocks of the incompressible-limit estimate:
///   density  = ‖a‖_{L^∞(Ḃ^{d/p}_{p,1})}        (unweighted)
///   sup      = ‖Pv − V‖_{L^∞(Ḃ^{d/p−1}_{p,1})}
///   grad_l1  = μ‖Pv − V‖_{L¹(Ḃ^{d/p+1}_{p,1})}
///   dt_l1    = ‖Pv_t − V_t‖_{L¹(Ḃ^{d/p−1}_{p,1})}
struct LimitError {
  double density = 0.0;
  double sup = 0.0;
  double grad_l1 = 0.0;
  double dt_l1 = 0.0;

  /// √(ν/μ)·density, the weighting of the estimate.
  double scaled_density(double mu, double nu) const;
};

LimitError limit_error(const Trajectory& cns, const Trajectory& ins, double p, const DyadicBands& bands, double mu,
                       double nu);

/// Raised by fit_rate on inputs that do not determine a slope.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares line through (log ν, log error). The residual is the
/// root-mean-square deviation in log space.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

/// Needs at least three ν values spanning 1.5 decades and positive errors.
RateFit fit_rate(std::span<const double> nu_values, std::span<const double> errors);

struct SweepResult {
  std::vector<double> nu_values;
  std::vector<LimitError> errors;
  RateFit fit;
};

/// `t,X,Y,Z,W`
void write_ledger_csv(const std::string& path, const NormLedger& ledger);
/// `nu,err_density,err_sup,err_grad_l1,err_dt_l1`
void write_sweep_csv(const std::string& path, const SweepResult& sweep);
/// `slope <value>` and `residual <value>` lines.
void write_fit_txt(const std::string& path, const RateFit& fit);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace bcns
