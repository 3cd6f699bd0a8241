#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcns/spectral_field.hpp"

namespace bcns {

/// Raised when a run leaves the regime the solver can represent: vacuum,
/// density deviation beyond the configured bound, or non-finite values.
class BlowUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1 + a <= 0 (or below the vacuum floor) somewhere on the grid.
class VacuumError : public BlowUp {
 public:
  using BlowUp::BlowUp;
};

/// Barotropic pressure P(ρ) = (ρ^γ − 1)/γ, so P(1) = 0 and P'(1) = 1.
struct PhysicalParams {
  double mu = 1.0;      ///< shear viscosity, > 0
  double lambda = 0.0;  ///< volume viscosity
  double gamma = 1.0;   ///< pressure exponent, >= 1

  double nu() const { return lambda + 2.0 * mu; }
  /// Throws std::invalid_argument when μ <= 0, ν <= 0 or γ < 1.
  void validate() const;
};

/// Density deviation a = ρ − 1, velocity v, and time.
struct FlowState {
  SpectralField a;
  SpectralField v;
  double t = 0.0;

  static FlowState zero(const Grid& grid);
};

struct StepperConfig {
  double cfl = 0.4;
  double dt_max = 0.01;
  /// Time between stored snapshots; the stepper lands exactly on multiples.
  double snapshot_stride = 0.1;
  /// Blow-up when ‖a‖_∞ exceeds this.
  double max_density_deviation = 0.9;
  /// Vacuum guard: 1 + a must stay above this.
  double vacuum_floor = 0.1;
  /// Blow-up when any physical value exceeds this in magnitude.
  double overflow = 1e8;
  /// Switch off every nonlinear term (exact linear propagation only).
  bool nonlinear = true;

  void validate() const;
};

struct PressureTerms {
  SpectralField pressure;  ///< P(1 + a)
  SpectralField k;         ///< k(a) = P'(1 + a) − 1 = (1 + a)^{γ−1} − 1
};

/// Evaluated pointwise in physical space, then dealiased. Throws
/// VacuumError when 1 + a <= 0 at some grid point.
PressureTerms pressure_terms(const SpectralField& a, double gamma);

/// Linearized acoustic-viscous eigenvalues λ± = (−νκ² ± √(ν²κ⁴ − 4κ²))/2 for |k| = κ.
std::pair<cplx, cplx> acoustic_eigenvalues(double kappa, double nu);

/// exp(A dt) for A = [[0, −iκ], [−iκ, −νκ²]] acting on (â, k̂·v̂), row-major.
std::array<cplx, 4> acoustic_propagator(double kappa, double nu, double dt);

/// One step of the compressible system in nonconservative form.
///
/// The constant-coefficient linear part is propagated exactly (transverse
/// velocity decays by e^{−μ|k|²dt}; the longitudinal pair (â, k̂·v̂) by
/// acoustic_propagator). The nonlinear remainder
///   a:  −div(a v)
///   v:  −v·∇v − a/(1+a)·(μΔv + (ν−μ)∇div v) − (k(a) − a)/(1+a)·∇a
/// is integrated with the integrating-factor form of Heun's method. The
/// state is kept on the 2/3 ball. Throws BlowUp/VacuumError.
FlowState step_cns(const FlowState& state, const PhysicalParams& params, double dt, bool nonlinear = true);

/// One step of incompressible Navier-Stokes for divergence-free V:
/// exact viscous decay and Heun on −P(V·∇V).
SpectralField step_ins(const SpectralField& velocity, double mu, double dt);

/// Pressure Π = Δ⁻¹div(−V·∇V) of the incompressible flow.
SpectralField ins_pressure(const SpectralField& velocity);

/// One step of u_t − μΔu = f with f linear in time between f_start and
/// f_end; the Duhamel integral is evaluated exactly for that interpolant.
SpectralField step_heat(const SpectralField& u, double mu, const SpectralField& f_start,
                        const SpectralField& f_end, double dt);

enum class Termination { horizon, blowup };

struct Event {
  double t = 0.0;
  std::string kind;
  std::string detail;

  /// `t=<t> event=<kind>[ detail=<detail>]`
  std::string line() const;
};

struct Trajectory {
  std::vector<FlowState> snapshots;
  std::vector<Event> events;
  Termination termination = Termination::horizon;
  std::size_t steps = 0;

  std::vector<double> times() const;
};

/// Adaptive run of the compressible system up to horizon T.
/// dt = min(cfl·Δx/max|v|, dt_max), clipped to land on snapshot times.
/// Blow-up ends the run with an event instead of throwing.
Trajectory run_cns(FlowState initial, const PhysicalParams& params, const StepperConfig& config, double horizon);

/// Same driver for the incompressible system; snapshots carry a ≡ 0.
Trajectory run_ins(SpectralField velocity, double mu, const StepperConfig& config, double horizon);

/// Kinetic energy (1/2)·mean|v|² from the coefficients.
double kinetic_energy(const SpectralField& v);

}  // namespace bcns
