#include "bcns/solvers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bcns/calculus.hpp"
#include "bcns/operators.hpp"
#include "bcns/transform.hpp"

namespace bcns {
namespace {

bool all_finite(const SpectralField& f) {
  return std::ranges::all_of(f.data(), [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double min_value(const RealField& f) { return *std::ranges::min_element(f.values); }

// sinh(z)/z, with the series near the origin.
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

void propagate_linear(FlowState& s, const PhysicalParams& params, double dt) {
  const Grid& g = s.a.grid();
  const int d = g.dim();
  const double nu = params.nu();
  for (std::size_t m = 1; m < g.size(); ++m) {
    const double kappa = g.k_norm(m);
    const auto k = g.wavevector(m);
    cplx vl{};
    for (int c = 0; c < d; ++c) vl += (k[c] / kappa) * s.v.at(c, m);
    const double transverse = std::exp(-params.mu * kappa * kappa * dt);
    const auto M = acoustic_propagator(kappa, nu, dt);
    const cplx a0 = s.a.at(0, m);
    const cplx a1 = M[0] * a0 + M[1] * vl;
    const cplx vl1 = M[2] * a0 + M[3] * vl;
    s.a.at(0, m) = a1;
    for (int c = 0; c < d; ++c) {
      const double khat = k[c] / kappa;
      const cplx vt = s.v.at(c, m) - khat * vl;
      s.v.at(c, m) = transverse * vt + khat * vl1;
    }
  }
}

struct Tendency {
  SpectralField a;
  SpectralField v;
};

Tendency nonlinear_cns(const FlowState& s, const PhysicalParams& params) {
  const Grid& g = s.a.grid();
  const int d = g.dim();
  const std::size_t n = g.size();
  const double mu = params.mu;
  const double nu = params.nu();
  const double gamma = params.gamma;

  const SpectralField ad = dealias(s.a);
  const SpectralField vd = dealias(s.v);
  const RealField a = inverse_transform(ad);
  if (min_value(a) <= -1.0) throw VacuumError("vacuum: 1 + a <= 0 during nonlinear evaluation");
  const RealField v = inverse_transform(vd);
  const RealField grad_a = inverse_transform(gradient(ad));
  const RealField lap_v = inverse_transform(laplacian(vd));
  const RealField grad_div_v = inverse_transform(gradient(divergence(vd)));

  RealField av(g, Rank::vector);
  for (int c = 0; c < d; ++c) {
    auto dst = av.component(c);
    auto vc = v.component(c);
    for (std::size_t m = 0; m < n; ++m) dst[m] = a.values[m] * vc[m];
  }

  RealField nv(g, Rank::vector);
  for (int c = 0; c < d; ++c) {
    auto dst = nv.component(c);
    const SpectralField vc = vd.extract(c);
    for (int b = 0; b < d; ++b) {
      const RealField dv = inverse_transform(derivative(vc, b, 1));
      auto vb = v.component(b);
      for (std::size_t m = 0; m < n; ++m) dst[m] -= vb[m] * dv.values[m];
    }
    auto lap = lap_v.component(c);
    auto gdv = grad_div_v.component(c);
    auto ga = grad_a.component(c);
    for (std::size_t m = 0; m < n; ++m) {
      const double rho = 1.0 + a.values[m];
      const double ratio = a.values[m] / rho;
      // (k(a) − a)/(1 + a) = (1 + a)^{γ−2} − 1
      const double pressure_dev = std::pow(rho, gamma - 2.0) - 1.0;
      dst[m] -= ratio * (mu * lap[m] + (nu - mu) * gdv[m]) + pressure_dev * ga[m];
    }
  }
  return {-divergence(dealias(forward_transform(av))), dealias(forward_transform(nv))};
}

void axpy(FlowState& s, double h, const Tendency& k) {
  s.a += h * k.a;
  s.v += h * k.v;
}

void check_finite(const FlowState& s) {
  if (!all_finite(s.a) || !all_finite(s.v)) throw BlowUp("non-finite values in state");
}

SpectralField ins_tendency(const SpectralField& V) { return -leray_project(advect(V, V)); }

void decay(SpectralField& f, double mu, double dt) {
  const Grid& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t m = 1; m < g.size(); ++m) comp[m] *= std::exp(-mu * g.k_squared(m) * dt);
  }
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Output times t0 + i·stride, capped by the horizon.
double output_time(double t0, double stride, std::size_t i, double horizon) {
  return std::min(t0 + static_cast<double>(i) * stride, horizon);
}

struct Guard {
  const StepperConfig& config;

  // Empty string when the state is acceptable, else the blow-up reason.
  std::string check(const FlowState& s) const {
    if (!all_finite(s.a) || !all_finite(s.v)) return "non-finite values";
    const RealField a = inverse_transform(s.a);
    const RealField v = inverse_transform(s.v);
    const double amax = max_abs(a);
    if (1.0 + min_value(a) <= config.vacuum_floor) return "vacuum guard (1+a <= " + format_double(config.vacuum_floor) + ")";
    if (amax > config.max_density_deviation) return "density deviation |a|=" + format_double(amax);
    if (amax > config.overflow || max_abs(v) > config.overflow) return "overflow";
    return {};
  }
};

template <class StepFn, class VelocityOf>
Trajectory drive(FlowState state, const StepperConfig& config, double horizon, const Guard* guard, StepFn&& step,
                 VelocityOf&& velocity_of) {
  config.validate();
  if (!(horizon >= state.t)) throw std::invalid_argument("run: horizon precedes the initial time");
  Trajectory traj;
  const double t0 = state.t;
  const double dx = state.v.grid().spacing();
  traj.events.push_back({t0, "start", {}});
  if (guard != nullptr) {
    if (auto why = guard->check(state); !why.empty()) {
      traj.snapshots.push_back(state);
      traj.events.push_back({t0, "blowup", why});
      traj.termination = Termination::blowup;
      return traj;
    }
  }
  traj.snapshots.push_back(state);
  std::size_t next = 1;
  while (state.t < horizon) {
    const double target = output_time(t0, config.snapshot_stride, next, horizon);
    const double vmax = max_abs(inverse_transform(velocity_of(state)));
    double dt = config.dt_max;
    if (vmax > 0.0) dt = std::min(dt, config.cfl * dx / vmax);
    bool land = false;
    if (state.t + dt >= target - 1e-12 * std::max(1.0, std::abs(target))) {
      dt = target - state.t;
      land = true;
    }
    try {
      state = step(state, dt);
    } catch (const BlowUp& e) {
      traj.events.push_back({state.t, "blowup", e.what()});
      traj.termination = Termination::blowup;
      return traj;
    }
    ++traj.steps;
    if (land) state.t = target;
    if (guard != nullptr) {
      if (auto why = guard->check(state); !why.empty()) {
        traj.snapshots.push_back(state);
        traj.events.push_back({state.t, "blowup", why});
        traj.termination = Termination::blowup;
        return traj;
      }
    }
    if (land) {
      traj.snapshots.push_back(state);
      ++next;
    }
  }
  traj.events.push_back({state.t, "horizon", {}});
  return traj;
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("shear viscosity mu must be > 0");
  if (!(nu() > 0.0)) throw std::invalid_argument("nu = lambda + 2 mu must be > 0");
  if (!(gamma >= 1.0)) throw std::invalid_argument("pressure exponent gamma must be >= 1");
}

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be > 0");
  if (!(snapshot_stride > 0.0)) throw std::invalid_argument("snapshot_stride must be > 0");
}

FlowState FlowState::zero(const Grid& grid) {
  return {SpectralField::scalar(grid), SpectralField::vector(grid), 0.0};
}

PressureTerms pressure_terms(const SpectralField& a, double gamma) {
  if (a.rank() != Rank::scalar) throw std::invalid_argument("pressure_terms: a must be scalar");
  const RealField x = inverse_transform(dealias(a));
  RealField p(a.grid(), Rank::scalar);
  RealField k(a.grid(), Rank::scalar);
  for (std::size_t m = 0; m < x.values.size(); ++m) {
    const double rho = 1.0 + x.values[m];
    if (rho <= 0.0) throw VacuumError("pressure_terms: vacuum (1 + a <= 0)");
    p.values[m] = (std::pow(rho, gamma) - 1.0) / gamma;
    k.values[m] = std::pow(rho, gamma - 1.0) - 1.0;
  }
  return {dealias(forward_transform(p)), dealias(forward_transform(k))};
}

std::pair<cplx, cplx> acoustic_eigenvalues(double kappa, double nu) {
  const double c = -0.5 * nu * kappa * kappa;
  const double disc = c * c - kappa * kappa;
  if (disc >= 0.0) {
    const double minus = c - std::sqrt(disc);
    // λ+·λ− = κ²; avoids cancellation in c + √disc.
    return {cplx(kappa * kappa / minus, 0.0), cplx(minus, 0.0)};
  }
  const double w = std::sqrt(-disc);
  return {cplx(c, w), cplx(c, -w)};
}

std::array<cplx, 4> acoustic_propagator(double kappa, double nu, double dt) {
  if (kappa == 0.0) return {cplx(1.0), cplx{}, cplx{}, cplx(1.0)};
  const cplx off(0.0, -kappa);
  const double c = -0.5 * nu * kappa * kappa;
  const auto [lp, lm] = acoustic_eigenvalues(kappa, nu);
  const cplx s = 0.5 * (lp - lm);
  if (std::abs(s * dt) <= 0.5) {
    // Near-degenerate: exp(A dt) = e^{c dt}[cosh(s dt) I + dt·sinhc(s dt)(A − cI)].
    const double ec = std::exp(c * dt);
    const cplx ch = std::cosh(s * dt);
    const cplx sh = dt * sinhc(s * dt);
    return {ec * (ch - c * sh), ec * sh * off, ec * sh * off, ec * (ch + (-nu * kappa * kappa - c) * sh)};
  }
  // Well-separated eigenvalues: Sylvester's formula, overflow-free.
  const cplx ep = std::exp(lp * dt);
  const cplx em = std::exp(lm * dt);
  const cplx gap = lp - lm;
  const cplx f1 = (ep - em) / gap;
  return {(lp * em - lm * ep) / gap, f1 * off, f1 * off, (lp * ep - lm * em) / gap};
}

FlowState step_cns(const FlowState& state, const PhysicalParams& params, double dt, bool nonlinear) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("step_cns: dt must be positive");
  require_same_grid(state.a, state.v, "step_cns");
  FlowState u{dealias(state.a), dealias(state.v), state.t};
  if (!nonlinear) {
    propagate_linear(u, params, dt);
    u.t = state.t + dt;
    check_finite(u);
    return u;
  }
  const Tendency k1 = nonlinear_cns(u, params);
  FlowState stage = u;
  axpy(stage, dt, k1);
  propagate_linear(stage, params, dt);
  const Tendency k2 = nonlinear_cns(stage, params);
  FlowState next = u;
  axpy(next, 0.5 * dt, k1);
  propagate_linear(next, params, dt);
  axpy(next, 0.5 * dt, k2);
  next.t = state.t + dt;
  check_finite(next);
  return next;
}

SpectralField step_ins(const SpectralField& velocity, double mu, double dt) {
  if (velocity.rank() != Rank::vector) throw std::invalid_argument("step_ins: expected a vector field");
  if (!(mu > 0.0) || !(dt > 0.0)) throw std::invalid_argument("step_ins: mu and dt must be positive");
  const SpectralField V = dealias(velocity);
  const SpectralField k1 = ins_tendency(V);
  SpectralField stage = V + dt * k1;
  decay(stage, mu, dt);
  const SpectralField k2 = ins_tendency(stage);
  SpectralField next = V + (0.5 * dt) * k1;
  decay(next, mu, dt);
  next += (0.5 * dt) * k2;
  if (!all_finite(next)) throw BlowUp("non-finite values in incompressible state");
  return next;
}

SpectralField ins_pressure(const SpectralField& velocity) {
  // Δ⁻¹div(−V·∇V) = (−Δ)⁻¹div(V·∇V)
  return inv_laplacian(divergence(advect(velocity, velocity)));
}

SpectralField step_heat(const SpectralField& u, double mu, const SpectralField& f_start,
                        const SpectralField& f_end, double dt) {
  if (!(mu > 0.0) || !(dt > 0.0)) throw std::invalid_argument("step_heat: mu and dt must be positive");
  require_same_grid(u, f_start, "step_heat");
  require_same_grid(u, f_end, "step_heat");
  const Grid& g = u.grid();
  SpectralField out = u;
  for (int c = 0; c < u.components(); ++c) {
    auto dst = out.component(c);
    auto f0 = f_start.component(c);
    auto f1 = f_end.component(c);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double x = mu * g.k_squared(m) * dt;
      // ∫_0^dt e^{−c(dt−s)}[(1 − s/dt) f0 + (s/dt) f1] ds = dt·(w0 f0 + w1 f1)
      const double e = std::exp(-x);
      double w0, w1;
      if (x < 1e-4) {
        w1 = 0.5 - x / 6.0 + x * x / 24.0;
        w0 = 1.0 - x / 2.0 + x * x / 6.0 - w1;
      } else {
        const double phi1 = -std::expm1(-x) / x;
        w1 = (x - 1.0 + e) / (x * x);
        w0 = phi1 - w1;
      }
      dst[m] = e * dst[m] + dt * (w0 * f0[m] + w1 * f1[m]);
    }
  }
  return out;
}

std::string Event::line() const {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, t);
  std::ostringstream os;
  os << "t=" << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << " event=" << kind;
  if (!detail.empty()) os << " detail=" << detail;
  return os.str();
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) out.push_back(s.t);
  return out;
}

Trajectory run_cns(FlowState initial, const PhysicalParams& params, const StepperConfig& config, double horizon) {
  params.validate();
  initial.a = dealias(initial.a);
  initial.v = dealias(initial.v);
  const Guard guard{config};
  const bool nonlinear = config.nonlinear;
  return drive(
      std::move(initial), config, horizon, &guard,
      [&](const FlowState& s, double dt) { return step_cns(s, params, dt, nonlinear); },
      [](const FlowState& s) -> const SpectralField& { return s.v; });
}

Trajectory run_ins(SpectralField velocity, double mu, const StepperConfig& config, double horizon) {
  FlowState initial{SpectralField::scalar(velocity.grid()), dealias(std::move(velocity)), 0.0};
  return drive(
      std::move(initial), config, horizon, nullptr,
      [&](const FlowState& s, double dt) {
        return FlowState{s.a, step_ins(s.v, mu, dt), s.t + dt};
      },
      [](const FlowState& s) -> const SpectralField& { return s.v; });
}

double kinetic_energy(const SpectralField& v) {
  const double l2 = v.l2();
  return 0.5 * l2 * l2;
}

}  // namespace bcns
