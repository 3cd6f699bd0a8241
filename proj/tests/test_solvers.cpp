#include <cmath>
#include <numbers>

#include "bcns/calculus.hpp"
#include "bcns/initial_data.hpp"
#include "bcns/operators.hpp"
#include "bcns/solvers.hpp"
#include "bcns/transform.hpp"
#include "doctest.h"

using namespace bcns;

namespace {

SpectralField scalar_of(const Grid& g, double (*fn)(double, double)) {
  return forward_transform(sample(g, [fn](auto x) { return fn(x[0], x[1]); }));
}

}  // namespace

TEST_CASE("pressure_terms") {
  const Grid g = make_grid(2, 16);
  const SpectralField a = 0.3 * forward_transform(sample(g, [](auto x) { return std::cos(x[0]) * std::sin(x[1]); }));
  {
    const auto [P, k] = pressure_terms(a, 1.0);
    CHECK(max_abs_diff(P, a) <= 1e-15);
    CHECK(k.l2() <= 1e-15);
  }
  {
    const auto [P, k] = pressure_terms(a, 2.0);
    CHECK(max_abs_diff(k, a) <= 1e-15);
    // P = ((1+a)^2 - 1)/2 = a + a^2/2
    CHECK(max_abs_diff(P, a + 0.5 * product_dealiased(a, a)) <= 1e-15);
  }
  const SpectralField vacuum = forward_transform(sample(g, [](auto x) { return -std::cos(x[0]) * 1.0 - 0.01; }));
  CHECK_THROWS_AS(pressure_terms(vacuum, 1.4), VacuumError);
}

TEST_CASE("PhysicalParams validation") {
  CHECK(PhysicalParams{1.0, 8.0, 2.0}.nu() == 10.0);
  CHECK_THROWS_AS(PhysicalParams({0.0, 1.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalParams({1.0, -2.5, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalParams({1.0, 0.0, 0.5}).validate(), std::invalid_argument);
}

TEST_CASE("acoustic eigenvalues solve the dispersion relation") {
  for (double nu : {0.5, 1.0, 2.0, 3.0, 10.0}) {
    for (double kappa : {1.0, std::sqrt(2.0), 2.0, 5.0}) {
      const auto [lp, lm] = acoustic_eigenvalues(kappa, nu);
      using ld = long double;
      const std::complex<ld> disc(static_cast<ld>(nu) * nu * kappa * kappa * kappa * kappa - 4.0L * kappa * kappa, 0.0L);
      const std::complex<ld> root = std::sqrt(disc);
      const std::complex<ld> ref_p = (static_cast<ld>(-nu * kappa * kappa) + root) / 2.0L;
      const std::complex<ld> ref_m = (static_cast<ld>(-nu * kappa * kappa) - root) / 2.0L;
      CHECK(std::abs(std::complex<ld>(lp) - ref_p) <= 1e-12L * std::abs(ref_p));
      CHECK(std::abs(std::complex<ld>(lm) - ref_m) <= 1e-12L * std::abs(ref_m));
    }
  }
}

TEST_CASE("propagator eigenpairs on every lattice mode") {
  const Grid g = make_grid(2, 64);
  double worst = 0.0;
  for (double nu : {1.0, 2.0, 10.0, 640.0}) {
    for (double dt : {1e-3, 5e-3}) {
      for (std::size_t m = 1; m < g.size(); ++m) {
        const double kappa = g.k_norm(m);
        const auto M = acoustic_propagator(kappa, nu, dt);
        const auto [lp, lm] = acoustic_eigenvalues(kappa, nu);
        for (cplx lam : {lp, lm}) {
          // eigenvector of A = [[0, -iκ], [-iκ, -νκ²]] for eigenvalue λ
          cplx x0(0.0, -kappa), x1 = lam;
          const double nrm = std::sqrt(std::norm(x0) + std::norm(x1));
          x0 /= nrm;
          x1 /= nrm;
          const cplx e = std::exp(lam * dt);
          const double r = std::abs(M[0] * x0 + M[1] * x1 - e * x0) + std::abs(M[2] * x0 + M[3] * x1 - e * x1);
          worst = std::max(worst, r);
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("linear acoustics against the eigen-decomposition oracle") {
  const Grid g = make_grid(2, 16);
  const double eps = 1e-3;
  const double dt = 0.37;
  for (double nu : {1.0, 2.0, 10.0}) {
    const PhysicalParams params{1.0, nu - 2.0, 1.0};
    FlowState s = FlowState::zero(g);
    s.a = eps * forward_transform(sample(g, [](auto x) { return std::cos(x[0]); }));
    const FlowState next = step_cns(s, params, dt, false);

    // (â, v̂_L)(0) = (ε/2, 0) = α x₊ + β x₋ with x± = (−i, λ±)
    auto [lp, lm] = acoustic_eigenvalues(1.0, nu);
    if (nu == 2.0) {
      // critical damping: double root λ = −1, generalized eigenvector
      const cplx a0 = eps / 2.0;
      const double lam = -1.0;
      // y' = A y with A = [[0,-i],[-i,-2]]: y(t) = e^{λt}(I + t(A − λI)) y0
      const cplx a1 = std::exp(lam * dt) * (a0 * (1.0 + dt * (0.0 - lam)));
      const cplx v1 = std::exp(lam * dt) * (a0 * dt * cplx(0.0, -1.0));
      const std::size_t k1 = g.index_of({1, 0, 0});
      CHECK(std::abs(next.a.at(0, k1) - a1) <= 1e-10 * eps);
      CHECK(std::abs(next.v.at(0, k1) - v1) <= 1e-10 * eps);
      continue;
    }
    const cplx a0 = eps / 2.0;
    // α(−i) + β(−i) = a0, α λ₊ + β λ₋ = 0
    const cplx beta = a0 / (cplx(0.0, -1.0) * (1.0 - lm / lp));
    const cplx alpha = -beta * lm / lp;
    const cplx a1 = cplx(0.0, -1.0) * (alpha * std::exp(lp * dt) + beta * std::exp(lm * dt));
    const cplx v1 = alpha * lp * std::exp(lp * dt) + beta * lm * std::exp(lm * dt);
    const std::size_t k1 = g.index_of({1, 0, 0});
    const std::size_t km1 = g.index_of({-1, 0, 0});
    CHECK(std::abs(next.a.at(0, k1) - a1) <= 1e-10 * eps);
    CHECK(std::abs(next.v.at(0, k1) - v1) <= 1e-10 * eps);
    CHECK(std::abs(next.a.at(0, km1) - std::conj(a1)) <= 1e-10 * eps);
    CHECK(next.v.at(1, k1) == cplx{});
  }
}

TEST_CASE("step_cns basics") {
  const Grid g = make_grid(2, 16);
  const PhysicalParams params{1.0, 3.0, 1.4};
  SUBCASE("zero state is an equilibrium") {
    const FlowState next = step_cns(FlowState::zero(g), params, 0.01);
    CHECK(next.a.l2() == 0.0);
    CHECK(next.v.l2() == 0.0);
    CHECK(next.t == doctest::Approx(0.01));
  }
  SUBCASE("tiny divergence-free data tracks the incompressible step to second order") {
    double previous = 0.0;
    for (double amp : {1e-2, 1e-3}) {
      FlowState s = FlowState::zero(g);
      s.v = amp * taylor_green(g) + amp * leray_project(random_field(g, Rank::vector, 3, 0));
      const FlowState next = step_cns(s, params, 0.05);
      const SpectralField V = step_ins(s.v, params.mu, 0.05);
      const double err = max_abs_diff(next.v, V);
      CHECK(err <= 10.0 * amp * amp);
      if (previous > 0.0) CHECK(previous / err == doctest::Approx(100.0).epsilon(0.2));
      previous = err;
    }
  }
  CHECK_THROWS_AS(step_cns(FlowState::zero(g), params, -1.0), std::invalid_argument);
}

TEST_CASE("step_ins") {
  const Grid g = make_grid(2, 32);
  const double mu = 0.7;
  const double dt = 0.05;
  SUBCASE("Taylor-Green decays exactly; the nonlinear term is a pure gradient") {
    const SpectralField tg = taylor_green(g);
    CHECK(leray_project(advect(tg, tg)).l2() <= 1e-14);
    const SpectralField next = step_ins(tg, mu, dt);
    CHECK(max_abs_diff(next, std::exp(-2.0 * mu * dt) * tg) <= 1e-14);
    const SpectralField pi = ins_pressure(tg);
    // Π = −(cos 2x₁ + cos 2x₂)/4 for this vortex
    const SpectralField expected =
        forward_transform(sample(g, [](auto x) { return -(std::cos(2 * x[0]) + std::cos(2 * x[1])) / 4.0; }));
    CHECK(max_abs_diff(pi, expected) <= 1e-14);
  }
  SUBCASE("shear mode") {
    SpectralField shear = SpectralField::vector(g);
    const SpectralField s = forward_transform(sample(g, [](auto x) { return std::sin(x[1]); }));
    std::ranges::copy(s.component(0), shear.component(0).begin());
    CHECK(max_abs_diff(step_ins(shear, mu, dt), std::exp(-mu * dt) * shear) <= 1e-15);
  }
  CHECK(step_ins(SpectralField::vector(g), mu, dt).l2() == 0.0);
  SUBCASE("divergence stays zero") {
    SpectralField V = leray_project(random_field(g, Rank::vector, 4, 0));
    for (int i = 0; i < 20; ++i) {
      V = step_ins(V, mu, dt);
      CHECK(divergence(V).l2() <= 1e-12 * V.l2());
    }
  }
}

TEST_CASE("step_heat") {
  const Grid g = make_grid(2, 16);
  const double mu = 0.3;
  const SpectralField zero = SpectralField::scalar(g);
  const SpectralField mode = forward_transform(sample(g, [](auto x) { return std::cos(2 * x[0] + x[1]); }));
  CHECK(max_abs_diff(step_heat(mode, mu, zero, zero, 0.2), std::exp(-mu * 5.0 * 0.2) * mode) <= 1e-15);
  CHECK(step_heat(zero, 2.0, zero, zero, 0.1).l2() == 0.0);

  SUBCASE("constant forcing relaxes to f/(μ|k|²)") {
    SpectralField u = zero;
    const SpectralField f = mode;
    for (int i = 0; i < 200; ++i) u = step_heat(u, mu, f, f, 0.1);
    CHECK(max_abs_diff(u, (1.0 / (mu * 5.0)) * f) <= 1e-10);
    // closed-form Duhamel after one step: (1 − e^{−c t})/c · f
    const double c = mu * 5.0;
    const SpectralField one = step_heat(zero, mu, f, f, 0.4);
    CHECK(max_abs_diff(one, (-std::expm1(-c * 0.4) / c) * f) <= 1e-15);
  }
  SUBCASE("linear-in-time forcing matches quadrature") {
    // u(0) = 0, f(t) = t·mode: u(h) = ∫_0^h e^{−c(h−s)} s ds · mode
    const double c = mu * 5.0;
    const double h = 0.5;
    const double exact = (c * h - 1.0 + std::exp(-c * h)) / (c * c);
    const SpectralField got = step_heat(zero, mu, zero, h * mode, h);
    CHECK(max_abs_diff(got, exact * mode) <= 1e-15);
  }
}

TEST_CASE("run drivers") {
  StepperConfig config;
  config.dt_max = 0.01;
  config.snapshot_stride = 0.25;

  SUBCASE("zero data stays zero") {
    const Grid g = make_grid(2, 16);
    const Trajectory traj = run_cns(FlowState::zero(g), {1.0, 1.0, 1.4}, config, 1.0);
    CHECK(traj.termination == Termination::horizon);
    REQUIRE(traj.snapshots.size() == 5);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      CHECK(traj.snapshots[i].t == doctest::Approx(0.25 * i).epsilon(1e-15));
      CHECK(traj.snapshots[i].a.l2() == 0.0);
      CHECK(traj.snapshots[i].v.l2() == 0.0);
    }
    CHECK(traj.events.front().line() == "t=0 event=start");
    CHECK(traj.events.back().line() == "t=1 event=horizon");
  }

  SUBCASE("Taylor-Green energy decay") {
    const Grid g = make_grid(2, 32);
    const SpectralField tg = taylor_green(g);
    const Trajectory traj = run_ins(tg, 1.0, config, 1.0);
    const double ratio = kinetic_energy(traj.snapshots.back().v) / kinetic_energy(tg);
    CHECK(std::abs(ratio - std::exp(-4.0)) <= 1e-4);
  }

  SUBCASE("near-vacuum data records a blow-up") {
    const Grid g = make_grid(2, 32);
    FlowState s = FlowState::zero(g);
    s.a = 0.85 * forward_transform(sample(g, [](auto x) { return std::cos(x[0]); }));
    s.v = compressible_mode(g, -2.0);
    const Trajectory traj = run_cns(s, {0.05, 0.0, 1.0}, config, 2.0);
    CHECK(traj.termination == Termination::blowup);
    CHECK(traj.events.back().kind == "blowup");
    CHECK(traj.events.back().line().find("event=blowup detail=") != std::string::npos);
  }

  SUBCASE("mass is conserved over 1000 steps") {
    const Grid g = make_grid(2, 16);
    FlowState s = FlowState::zero(g);
    s.a = 0.1 * random_field(g, Rank::scalar, 2, 0) + constant_field(g, 0.05);
    s.v = 0.5 * random_field(g, Rank::vector, 3, 0);
    const PhysicalParams params{1.0, 2.0, 1.4};
    const double mass0 = s.a.mean();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      s = step_cns(s, params, 0.002);
      worst = std::max(worst, std::abs(s.a.mean() - mass0));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("self-convergence is second order") {
  const Grid g = make_grid(2, 16);
  const PhysicalParams params{1.0, 1.0, 1.4};
  FlowState s0 = FlowState::zero(g);
  s0.a = 0.1 * forward_transform(sample(g, [](auto x) { return std::sin(x[0]) * std::cos(x[1]); }));
  s0.v = 0.5 * taylor_green(g) + compressible_mode(g, 0.2);
  auto terminal = [&](int steps) {
    FlowState s = s0;
    const double dt = 0.5 / steps;
    for (int i = 0; i < steps; ++i) s = step_cns(s, params, dt);
    return s;
  };
  const FlowState c = terminal(25);
  const FlowState m = terminal(50);
  const FlowState f = terminal(100);
  const double e1 = (c.a - m.a).l2() + (c.v - m.v).l2();
  const double e2 = (m.a - f.a).l2() + (m.v - f.v).l2();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}
