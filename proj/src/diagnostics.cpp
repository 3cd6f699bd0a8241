#include "bcns/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "bcns/calculus.hpp"
#include "bcns/operators.hpp"

namespace bcns {
namespace {

SpectralField one_plus_a_times(const SpectralField& a, const SpectralField& vec) { return vec + multiply(a, vec); }

std::vector<double> running_max(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = m = std::max(m, values[i]);
  return out;
}

std::vector<double> running_integral(std::span<const double> t, const std::vector<double>& values) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 1; i < values.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (values[i - 1] + values[i]);
  return out;
}

// Band norms computed once per field, weighted for several regularity indices.
struct Bands {
  std::vector<double> norms;
  int j_min;
  double weighted(double s) const { return weighted_band_sum(norms, s, 1.0, j_min); }
};

Bands bands_of(const SpectralField& f, double p, const DyadicBands& bands) {
  return {band_norms(f, p, bands), bands.j_min()};
}

void open_or_throw(std::ofstream& os, const std::string& path) {
  os.open(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
}

}  // namespace

SpectralField effective_velocity(const SpectralField& a, const SpectralField& u, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("effective_velocity: nu must be positive");
  return compressible_project(u) + (1.0 / nu) * inv_laplacian(gradient(remove_mean(a)));
}

SpectralField H1Terms::sum() const { return terms[0] + terms[1] + terms[2]; }

SpectralField H2Terms::sum() const {
  SpectralField s = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) s += terms[i];
  return s;
}

namespace {

void check_sources(const SourceFields& f) {
  for (const SpectralField* x : {&f.u, &f.V, &f.V_t, &f.Pu_t, &f.Qu_t}) {
    require_same_grid(f.a, *x, "source terms");
    if (x->rank() != Rank::vector) throw std::invalid_argument("source terms: velocity fields must be vectors");
  }
  if (f.a.rank() != Rank::scalar) throw std::invalid_argument("source terms: a must be scalar");
}

SpectralField time_term(const SourceFields& f) {
  return multiply(f.a, f.V_t + f.Pu_t + f.Qu_t + gradient(f.a));
}

}  // namespace

H1Terms assemble_H1(const SourceFields& f, const PhysicalParams& params) {
  check_sources(f);
  const SpectralField w = f.u + f.V;
  const SpectralField k = pressure_terms(f.a, params.gamma).k;
  return {{time_term(f), one_plus_a_times(f.a, advect(w, w)), multiply(k - f.a, gradient(f.a))}};
}

H2Terms assemble_H2(const SourceFields& f, const PhysicalParams&) {
  check_sources(f);
  const SpectralField Pu = leray_project(f.u);
  const SpectralField Qu = compressible_project(f.u);
  const SpectralField w = f.u + f.V;
  const SpectralField transport_Pu = advect(w, Pu);
  return {{time_term(f), one_plus_a_times(f.a, advect(Pu, f.V + Qu)), multiply(f.a, transport_Pu), transport_Pu,
           one_plus_a_times(f.a, advect(f.V, Qu) + advect(Qu, f.V)),
           multiply(f.a, advect(Qu, Qu) + advect(f.V, f.V))}};
}

std::vector<SpectralField> time_derivative(std::span<const double> t, std::span<const SpectralField> f) {
  const std::size_t n = t.size();
  if (n != f.size()) throw std::invalid_argument("time_derivative: times/fields size mismatch");
  if (n < 2) throw std::invalid_argument("time_derivative: need at least 2 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("time_derivative: times must increase strictly");
  }
  std::vector<SpectralField> out;
  out.reserve(n);
  if (n == 2) {
    const SpectralField d = (1.0 / (t[1] - t[0])) * (f[1] - f[0]);
    out.push_back(d);
    out.push_back(d);
    return out;
  }
  {
    const double h1 = t[1] - t[0], h2 = t[2] - t[1];
    out.push_back((-(2 * h1 + h2) / (h1 * (h1 + h2))) * f[0] + ((h1 + h2) / (h1 * h2)) * f[1] -
                  (h1 / (h2 * (h1 + h2))) * f[2]);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
    out.push_back((-h2 / (h1 * (h1 + h2))) * f[i - 1] + ((h2 - h1) / (h1 * h2)) * f[i] +
                  (h1 / (h2 * (h1 + h2))) * f[i + 1]);
  }
  {
    const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
    out.push_back((h2 / (h1 * (h1 + h2))) * f[n - 3] - ((h1 + h2) / (h1 * h2)) * f[n - 2] +
                  ((2 * h2 + h1) / (h2 * (h1 + h2))) * f[n - 1]);
  }
  return out;
}

SourceFields Decomposed::source(std::size_t i) const { return {a[i], u[i], V[i], V_t[i], Pu_t[i], Qu_t[i]}; }

Decomposed decompose(const Trajectory& cns, const Trajectory& ins) {
  const std::size_t n = cns.snapshots.size();
  if (n != ins.snapshots.size()) throw TrajectoryMismatch("trajectories have different snapshot counts");
  if (n < 2) throw TrajectoryMismatch("trajectories need at least 2 snapshots");
  Decomposed d;
  for (std::size_t i = 0; i < n; ++i) {
    const FlowState& c = cns.snapshots[i];
    const FlowState& r = ins.snapshots[i];
    if (c.v.grid() != r.v.grid()) throw TrajectoryMismatch("trajectories live on different grids");
    if (std::abs(c.t - r.t) > 1e-12 * std::max(1.0, std::abs(c.t))) {
      throw TrajectoryMismatch("snapshot times differ at index " + std::to_string(i));
    }
    d.times.push_back(c.t);
    d.a.push_back(c.a);
    d.u.push_back(c.v - r.v);
    d.V.push_back(r.v);
    d.Pu.push_back(leray_project(d.u.back()));
    d.Qu.push_back(compressible_project(d.u.back()));
  }
  d.a_t = time_derivative(d.times, d.a);
  d.V_t = time_derivative(d.times, d.V);
  d.Pu_t = time_derivative(d.times, d.Pu);
  d.Qu_t = time_derivative(d.times, d.Qu);
  return d;
}

std::vector<Residual> decomposition_residual(const Trajectory& cns, const Trajectory& ins,
                                             const PhysicalParams& params, const DyadicBands& bands) {
  const Decomposed d = decompose(cns, ins);
  const BesovIndex idx{bands.grid().dim() / 2.0 - 1.0, 2.0, 1.0};
  std::vector<Residual> out;
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    const SourceFields f = d.source(i);
    const SpectralField r1 = d.a_t[i] + divergence(d.Qu[i]) + divergence(multiply(f.a, f.u + f.V));
    const SpectralField r2 = d.Qu_t[i] - params.nu() * laplacian(d.Qu[i]) + gradient(f.a) +
                             compressible_project(assemble_H1(f, params).sum());
    const SpectralField r3 =
        d.Pu_t[i] - params.mu * laplacian(d.Pu[i]) + leray_project(assemble_H2(f, params).sum());
    out.push_back({d.times[i], besov_norm(r1, idx, bands), besov_norm(r2, idx, bands), besov_norm(r3, idx, bands)});
  }
  return out;
}

bool admissible_p(int d, double p) {
  if (d == 2) return p >= 2.0 && p < 4.0;
  return p >= 2.0 && p <= std::min(4.0, 2.0 * d / (d - 2.0));
}

NormLedger norm_ledger(const Trajectory& cns, const Trajectory& ins, const PhysicalParams& params, double p,
                       const DyadicBands& bands) {
  const Decomposed d = decompose(cns, ins);
  const int dim = bands.grid().dim();
  const double nu = params.nu();
  const double sl = dim / 2.0;  // low frequencies: Ḃ^{sl + ·}_{2,1}
  const double sh = dim / p;    // high frequencies: Ḃ^{sh + ·}_{p,1}
  NormLedger out;
  if (!admissible_p(dim, p)) out.warning = "p = " + format_double(p) + " lies outside the admissible range";

  const std::size_t n = d.times.size();
  std::vector<double> x_a, x_grad, x_q, x_ah, x_qh;
  std::vector<double> y_int, z_pu, w_int, v_sup, v_int, m_int;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a_lo, a_hi] = split_low_high(d.a[i], nu, bands);
    const auto [q_lo, q_hi] = split_low_high(d.Qu[i], nu, bands);
    const auto [r_lo, r_hi] = split_low_high(d.Qu_t[i] + gradient(d.a[i]), nu, bands);
    const Bands A = bands_of(a_lo, 2.0, bands);
    const Bands G = bands_of(gradient(a_lo), 2.0, bands);
    const Bands Q = bands_of(q_lo, 2.0, bands);
    const Bands Ah = bands_of(a_hi, p, bands);
    const Bands Qh = bands_of(q_hi, p, bands);
    const Bands P = bands_of(d.Pu[i], p, bands);
    const Bands V = bands_of(d.V[i], p, bands);

    x_a.push_back(A.weighted(sl - 1));
    x_grad.push_back(nu * G.weighted(sl - 1));
    x_q.push_back(Q.weighted(sl - 1));
    x_ah.push_back(nu * Ah.weighted(sh));
    x_qh.push_back(Qh.weighted(sh - 1));
    y_int.push_back(nu * A.weighted(sl + 1) + nu * nu * G.weighted(sl + 1) + nu * Q.weighted(sl + 1) +
                    Ah.weighted(sh) + nu * Qh.weighted(sh + 1) + besov_norm(r_lo, {sl - 1, 2.0, 1.0}, bands) +
                    besov_norm(r_hi, {sh - 1, p, 1.0}, bands));
    z_pu.push_back(P.weighted(sh - 1));
    w_int.push_back(besov_norm(d.Pu_t[i], {sh - 1, p, 1.0}, bands) + P.weighted(sh + 1));
    const double vt = besov_norm(d.V_t[i], {sh - 1, p, 1.0}, bands);
    v_sup.push_back(V.weighted(sh - 1));
    v_int.push_back(vt + V.weighted(sh + 1));
    m_int.push_back(vt + params.mu * V.weighted(sh + 1));
  }

  const auto X1 = running_max(x_a), X2 = running_max(x_grad), X3 = running_max(x_q), X4 = running_max(x_ah),
             X5 = running_max(x_qh);
  const auto Y = running_integral(d.times, y_int);
  const auto Z = running_max(z_pu);
  const auto W = running_integral(d.times, w_int);
  const auto Vs = running_max(v_sup);
  const auto Vi = running_integral(d.times, v_int);
  const auto Mi = running_integral(d.times, m_int);
  for (std::size_t i = 0; i < n; ++i) {
    out.t.push_back(d.times[i]);
    out.X.push_back(X1[i] + X2[i] + X3[i] + X4[i] + X5[i]);
    out.Y.push_back(Y[i]);
    out.Z.push_back(Z[i]);
    out.W.push_back(W[i]);
    out.Vcal.push_back(Vs[i] + Vi[i]);
  }
  out.M = Vs.back() + Mi.back();

  const SpectralField& a0 = cns.snapshots.front().a;
  const auto [a0_lo, a0_hi] = split_low_high(a0, nu, bands);
  const auto [q0_lo, q0_hi] = split_low_high(compressible_project(cns.snapshots.front().v), nu, bands);
  out.hypothesis_lhs = besov_norm(a0_lo, {sl - 1, 2.0, 1.0}, bands) + nu * besov_norm(a0_lo, {sl, 2.0, 1.0}, bands) +
                       nu * besov_norm(a0_hi, {sh, p, 1.0}, bands) + besov_norm(q0_lo, {sl - 1, 2.0, 1.0}, bands) +
                       besov_norm(q0_hi, {sh - 1, p, 1.0}, bands) + out.M * out.M + params.mu * params.mu;
  out.hypothesis_rhs = std::sqrt(params.mu * nu) * std::exp(-(out.M + out.M * out.M));
  return out;
}

double LimitError::scaled_density(double mu, double nu) const { return std::sqrt(nu / mu) * density; }

LimitError limit_error(const Trajectory& cns, const Trajectory& ins, double p, const DyadicBands& bands, double mu,
                       double nu) {
  if (!(mu > 0.0) || !(nu > 0.0)) throw std::invalid_argument("limit_error: viscosities must be positive");
  const Decomposed d = decompose(cns, ins);
  const double sh = bands.grid().dim() / p;
  std::vector<SpectralField> diff;
  for (std::size_t i = 0; i < d.times.size(); ++i) diff.push_back(leray_project(cns.snapshots[i].v) - d.V[i]);
  const auto diff_t = time_derivative(d.times, diff);

  LimitError e;
  std::vector<double> grad, dt;
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    e.density = std::max(e.density, besov_norm(d.a[i], {sh, p, 1.0}, bands));
    const Bands D = bands_of(diff[i], p, bands);
    e.sup = std::max(e.sup, D.weighted(sh - 1));
    grad.push_back(mu * D.weighted(sh + 1));
    dt.push_back(besov_norm(diff_t[i], {sh - 1, p, 1.0}, bands));
  }
  e.grad_l1 = running_integral(d.times, grad).back();
  e.dt_l1 = running_integral(d.times, dt).back();
  return e;
}

RateFit fit_rate(std::span<const double> nu_values, std::span<const double> errors) {
  const std::size_t n = nu_values.size();
  if (n != errors.size()) throw FitError("fit_rate: nu/error size mismatch");
  if (n < 3) throw FitError("fit_rate: need at least 3 nu values");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(nu_values[i] > 0.0)) throw FitError("fit_rate: nu values must be positive");
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) throw FitError("fit_rate: errors must be positive and finite");
  }
  const auto [lo, hi] = std::minmax_element(nu_values.begin(), nu_values.end());
  if (std::log10(*hi / *lo) < 1.5) throw FitError("fit_rate: nu values must span at least 1.5 decades");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(nu_values[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(nu_values[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(errors[i]) - (fit.intercept + fit.slope * std::log(nu_values[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_ledger_csv(const std::string& path, const NormLedger& ledger) {
  std::ofstream os;
  open_or_throw(os, path);
  os << "t,X,Y,Z,W\n";
  for (std::size_t i = 0; i < ledger.t.size(); ++i) {
    os << format_double(ledger.t[i]) << ',' << format_double(ledger.X[i]) << ',' << format_double(ledger.Y[i]) << ','
       << format_double(ledger.Z[i]) << ',' << format_double(ledger.W[i]) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  std::ofstream os;
  open_or_throw(os, path);
  os << "nu,err_density,err_sup,err_grad_l1,err_dt_l1\n";
  for (std::size_t i = 0; i < sweep.nu_values.size(); ++i) {
    const LimitError& e = sweep.errors[i];
    os << format_double(sweep.nu_values[i]) << ',' << format_double(e.density) << ',' << format_double(e.sup) << ','
       << format_double(e.grad_l1) << ',' << format_double(e.dt_l1) << '\n';
  }
}

void write_fit_txt(const std::string& path, const RateFit& fit) {
  std::ofstream os;
  open_or_throw(os, path);
  os << "slope " << format_double(fit.slope) << "\nresidual " << format_double(fit.residual) << '\n';
}

}  // namespace bcns
