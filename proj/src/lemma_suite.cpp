#include "bcns/lemma_suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "bcns/calculus.hpp"
#include "bcns/diagnostics.hpp"
#include "bcns/initial_data.hpp"
#include "bcns/littlewood_paley.hpp"
#include "bcns/operators.hpp"
#include "bcns/solvers.hpp"
#include "bcns/transform.hpp"

namespace bcns {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent streams per role within one trial.
enum Salt : std::uint64_t { kU = 1, kV = 2, kF = 3, kG = 4, kPhase = 5 };

std::uint64_t salted(std::uint64_t seed, Salt salt) { return seed * 0x100000001b3ULL + salt; }

SpectralField rough(const Grid& g, Rank rank, std::uint64_t seed, Salt salt, int trial) {
  return random_field(g, rank, salted(seed, salt), static_cast<std::uint64_t>(trial));
}

// Envelope |k|^{−(d/2+3)}: finite Ḃ^{d/p+1}_{p,1} norms in the continuum limit.
SpectralField smooth(const Grid& g, Rank rank, std::uint64_t seed, Salt salt, int trial) {
  return random_field(g, rank, salted(seed, salt), static_cast<std::uint64_t>(trial), {.decay = g.dim() / 2.0 + 3.0});
}

double linf(const SpectralField& f) { return lp_norm(inverse_transform(f), kInf); }

double besov(const SpectralField& f, double s, double p, double r, const DyadicBands& b) {
  return besov_norm(f, {s, p, r}, b);
}

// ‖∇u‖ for a vector u as Σ_i ‖∇u_i‖ (an equivalent norm)
double grad_besov(const SpectralField& u, double s, double p, const DyadicBands& b) {
  double acc = 0.0;
  for (int c = 0; c < u.components(); ++c) acc += besov(gradient(u.extract(c)), s, p, 1.0, b);
  return acc;
}

std::string fmt(double x) { return format_double(x); }

std::string param_list(int d, std::initializer_list<std::pair<const char*, std::string>> items) {
  std::string out = "d=" + std::to_string(d);
  for (const auto& [k, v] : items) out += std::string(";") + k + "=" + v;
  return out;
}

// Collects ratios per grid size and turns them into a report.
class Collector {
 public:
  Collector(std::string lemma, std::string params) {
    report_.lemma = std::move(lemma);
    report_.params = std::move(params);
  }

  void begin_size(int n) {
    report_.sizes.push_back(n);
    current_.clear();
  }

  // Skips degenerate 0/0 samples.
  void add(double num, double den) {
    if (den == 0.0) return;
    current_.push_back(num / den);
  }

  void end_size() {
    std::vector<double> v = current_;
    if (v.empty()) v.push_back(0.0);
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    report_.max_by_size.push_back(v.back());
    report_.min_by_size.push_back(v.front());
    report_.median_by_size.push_back(n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]));
  }

  LemmaReport positive(double tolerance, bool extra = true) {
    finish();
    bool ok = extra;
    for (std::size_t i = 1; i < report_.max_by_size.size(); ++i) {
      const double prev = report_.max_by_size[i - 1];
      const double now = report_.max_by_size[i];
      if (prev == 0.0 && now == 0.0) continue;
      ok = ok && prev > 0.0 && std::abs(now / prev - 1.0) <= tolerance;
    }
    report_.stable = ok;
    return report_;
  }

  LemmaReport negative() {
    finish();
    report_.negative_case = true;
    report_.stable = false;
    bool grows = report_.max_by_size.size() >= 2;
    for (std::size_t i = 1; i < report_.max_by_size.size(); ++i) {
      grows = grows && report_.max_by_size[i] >= 1.25 * report_.max_by_size[i - 1];
    }
    report_.diverges = grows;
    return report_;
  }

  LemmaReport& raw() { return report_; }

 private:
  void finish() {
    report_.max_ratio = report_.max_by_size.empty() ? 0.0 : report_.max_by_size.back();
    report_.median_ratio = report_.median_by_size.empty() ? 0.0 : report_.median_by_size.back();
  }

  LemmaReport report_;
  std::vector<double> current_;
};

void check_trials(const LemmaSuiteConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("lemma suite: trials must be positive");
  if (c.sizes.empty()) throw std::invalid_argument("lemma suite: no grid sizes");
}

// Σ_{j in range} 2^{js}·norms[j − j_min]
double partial_sum(const std::vector<double>& norms, double s, int j_min, int j_hi) {
  double acc = 0.0;
  for (int j = j_min; j <= j_hi && j - j_min < static_cast<int>(norms.size()); ++j) {
    acc += std::exp2(j * s) * norms[static_cast<std::size_t>(j - j_min)];
  }
  return acc;
}

}  // namespace

std::vector<LemmaReport> check_bernstein(const LemmaSuiteConfig& config) {
  check_trials(config);
  if (config.trials < 10) throw std::invalid_argument("check_bernstein: needs at least 10 trials");
  std::set<int> size_set(config.sizes.begin(), config.sizes.end());
  size_set.insert(16);
  const int d = config.d;

  Collector annulus("bernstein_annulus", param_list(d, {{"p", "2"}, {"k", "1"}}));
  Collector ball2("bernstein_ball", param_list(d, {{"p", "2"}, {"k", "1"}}));
  Collector ball4("bernstein_ball", param_list(d, {{"p", "4"}, {"k", "1"}}));
  Collector lpq("bernstein_lp_lq", param_list(d, {{"p", "2"}, {"q", "inf"}, {"k", "0"}}));
  for (int n : size_set) {
    const Grid g = make_grid(d, n);
    const DyadicBands bands = build_partition(g);
    for (Collector* c : {&annulus, &ball2, &ball4, &lpq}) c->begin_size(n);
    for (int trial = 0; trial < config.trials; ++trial) {
      const SpectralField f = rough(g, Rank::scalar, config.seed, kF, trial);
      for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
        const double scale = std::exp2(j);
        const SpectralField block = dyadic_block(f, j, bands);
        const double l2 = block.l2();
        annulus.add(gradient(block).l2(), scale * l2);
        lpq.add(linf(block), std::exp2(j * d / 2.0) * l2);
        const SpectralField low = remove_mean(low_cutoff(f, j, bands));
        ball2.add(gradient(low).l2(), scale * low.l2());
        ball4.add(lp_norm(inverse_transform(gradient(low)), 4.0), scale * lp_norm(inverse_transform(low), 4.0));
      }
    }
    for (Collector* c : {&annulus, &ball2, &ball4, &lpq}) c->end_size();
  }
  // Parseval over the annulus 2^j[3/4, 8/3] makes these bounds exact.
  bool exact = true;
  for (std::size_t i = 0; i < annulus.raw().sizes.size(); ++i) {
    exact = exact && annulus.raw().min_by_size[i] >= 0.75 && annulus.raw().max_by_size[i] <= 8.0 / 3.0;
  }
  return {annulus.positive(0.25, exact), ball2.positive(0.25), ball4.positive(0.25), lpq.positive(0.20)};
}

std::vector<LemmaReport> check_product_laws(const LemmaSuiteConfig& config) {
  check_trials(config);
  const int d = config.d;
  Collector para_inf("paraproduct", param_list(d, {{"s", "0"}, {"p", "2"}, {"p1", "inf"}, {"p2", "2"}, {"r", "1"}}));
  Collector para_neg("paraproduct",
                     param_list(d, {{"s", "0.5"}, {"tau", "-0.5"}, {"p", "2"}, {"p1", "inf"}, {"p2", "2"}, {"r", "1"}}));
  Collector rem_pos("remainder",
                    param_list(d, {{"s1", "0.25"}, {"s2", "0.25"}, {"p1", "4"}, {"p2", "4"}, {"r1", "2"}, {"r2", "2"}}));
  Collector rem_neg("remainder",
                    param_list(d, {{"s1", "-0.25"}, {"s2", "-0.25"}, {"p1", "4"}, {"p2", "4"}, {"r1", "2"}, {"r2", "2"},
                                   {"data", "oscillation_N/4"}}));
  Collector prod22("product", param_list(d, {{"q", "2"}, {"p", "2"}, {"s1", "0.5"}, {"s2", "0.5"}}));
  Collector prod24("product", param_list(d, {{"q", "2"}, {"p", "4"}, {"s1", "0.5"}, {"s2", "0.5"}}));
  std::vector<Collector*> all{&para_inf, &para_neg, &rem_pos, &rem_neg, &prod22, &prod24};

  for (int n : config.sizes) {
    const Grid g = make_grid(d, n);
    const DyadicBands bands = build_partition(g);
    for (Collector* c : all) c->begin_size(n);
    for (int trial = 0; trial < config.trials; ++trial) {
      const SpectralField u = rough(g, Rank::scalar, config.seed, kU, trial);
      const SpectralField v = rough(g, Rank::scalar, config.seed, kV, trial);
      const SpectralField Tuv = paraproduct(u, v, bands);
      para_inf.add(besov(Tuv, 0.0, 2.0, 1.0, bands), linf(u) * besov(v, 0.0, 2.0, 1.0, bands));
      para_neg.add(besov(Tuv, 0.0, 2.0, 1.0, bands), besov(u, -0.5, kInf, kInf, bands) * besov(v, 0.5, 2.0, 1.0, bands));
      rem_pos.add(besov(remainder(u, v, bands), 0.5, 2.0, 1.0, bands),
                  besov(u, 0.25, 4.0, 2.0, bands) * besov(v, 0.25, 4.0, 2.0, bands));
      const SpectralField uv = product_dealiased(u, v);
      prod22.add(besov(uv, 0.0, 2.0, 1.0, bands), besov(u, 0.5, 2.0, 1.0, bands) * besov(v, 0.5, 2.0, 1.0, bands));
      prod24.add(besov(uv, 0.0, 4.0, 1.0, bands), besov(u, 0.5, 2.0, 1.0, bands) * besov(v, 0.5, 4.0, 1.0, bands));

      // High-high interaction feeding |k| = 1: cos(Kx₁ + θ) + cos(Kx₁ + x₂ + θ')
      std::mt19937_64 rng(salted(config.seed, kPhase) ^ static_cast<std::uint64_t>(trial));
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      const double K = n / 4;
      const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng), t4 = angle(rng);
      const SpectralField a =
          forward_transform(sample(g, [&](auto x) { return std::cos(K * x[0] + t1) + std::cos(K * x[0] + x[1] + t2); }));
      const SpectralField b =
          forward_transform(sample(g, [&](auto x) { return std::cos(K * x[0] + t3) + std::cos(K * x[0] + x[1] + t4); }));
      rem_neg.add(besov(remainder(a, b, bands), -0.5, 2.0, 1.0, bands),
                  besov(a, -0.25, 4.0, 2.0, bands) * besov(b, -0.25, 4.0, 2.0, bands));
    }
    for (Collector* c : all) c->end_size();
  }
  return {para_inf.positive(0.25), para_neg.positive(0.25), rem_pos.positive(0.25),
          rem_neg.negative(),      prod22.positive(0.25),   prod24.positive(0.25)};
}

std::vector<LemmaReport> check_commutators(const LemmaSuiteConfig& config) {
  check_trials(config);
  const int d = config.d;
  const double p = 3.0;  // inside the admissible range for d = 2 and 3
  const double nu = 1.0;
  const int j0 = 2;
  Collector transport("commutator_transport", param_list(d, {{"s", "0.5"}, {"p", "2"}, {"q", "2"}, {"div_free", "no"}}));
  Collector transport_df("commutator_transport",
                         param_list(d, {{"s", "-1.5"}, {"p", "2"}, {"q", "2"}, {"div_free", "yes"}}));
  Collector leray("commutator_leray", param_list(d, {{"p", fmt(p)}, {"nu", fmt(nu)}, {"j0", std::to_string(j0)},
                                                     {"div_free", "no"}}));
  Collector leray_df("commutator_leray", param_list(d, {{"p", fmt(p)}, {"nu", fmt(nu)}, {"j0", std::to_string(j0)},
                                                        {"div_free", "yes"}}));
  std::vector<Collector*> all{&transport, &transport_df, &leray, &leray_df};
  const double sl = d / 2.0;
  const double sh = d / p;

  for (int n : config.sizes) {
    const Grid g = make_grid(d, n);
    const DyadicBands bands = build_partition(g);
    for (Collector* c : all) c->begin_size(n);
    for (int trial = 0; trial < config.trials; ++trial) {
      const SpectralField u = smooth(g, Rank::vector, config.seed, kU, trial);
      const SpectralField udf = leray_project(u);
      const SpectralField v = rough(g, Rank::scalar, config.seed, kV, trial);

      auto commutator_sum = [&](const SpectralField& w, double s) {
        double acc = 0.0;
        for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
          acc += std::exp2(j * s) * commutator_transport(w, v, j, bands).l2();
        }
        return acc;
      };
      transport.add(commutator_sum(u, 0.5), besov(u, d / 2.0 + 1.0, 2.0, 1.0, bands) * besov(v, 0.5, 2.0, 1.0, bands));
      transport_df.add(commutator_sum(udf, -1.5),
                       besov(udf, d / 2.0 + 1.0, 2.0, 1.0, bands) * besov(v, -1.5, 2.0, 1.0, bands));

      // [P, w·∇]V = P(w·∇V) − w·∇(PV)
      const SpectralField V = rough(g, Rank::vector, config.seed, kG, trial);
      auto leray_lhs = [&](const SpectralField& w) {
        const SpectralField c = leray_project(advect(w, V)) - advect(w, leray_project(V));
        return partial_sum(band_norms(c, 2.0, bands), sl - 1.0, bands.j_min(), std::min(j0, bands.j_max()));
      };
      const auto [v_lo, v_hi] = split_low_high(V, nu, bands);
      const double v_side = besov(v_lo, sl - 1.0, 2.0, 1.0, bands) + besov(v_hi, sh - 1.0, p, 1.0, bands);
      const auto [u_lo, u_hi] = split_low_high(u, nu, bands);
      const double u_side = grad_besov(u_lo, sl, 2.0, bands) + grad_besov(u_hi, sh, p, bands);
      leray.add(leray_lhs(u), u_side * v_side);
      leray_df.add(leray_lhs(udf), grad_besov(udf, sh, p, bands) * v_side);
    }
    for (Collector* c : all) c->end_size();
  }
  return {transport.positive(0.25), transport_df.positive(0.25), leray.positive(0.25), leray_df.positive(0.25)};
}

HeatRatios heat_regularity_ratios(const SpectralField& u0, const SpectralField& profile, double mu,
                                  const DyadicBands& bands, double tau) {
  if (!(mu > 0.0)) throw std::invalid_argument("heat_regularity_ratios: mu must be positive");
  const Grid& g = u0.grid();
  const double T0 = 1.0;
  const double h0 = 0.01;  // rescaled step s = μt away from t = 0
  double k2max = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (g.inside_dealias(m)) k2max = std::max(k2max, g.k_squared(m));
  }
  // Geometric steps resolve the fastest decay e^{−μ|k|²t} near t = 0.
  std::vector<double> s{0.0};
  double step = 0.05 / k2max;
  while (s.back() < T0 - 1e-12) {
    s.push_back(std::min(T0, s.back() + step));
    step = std::min(h0, step * 1.05);
  }
  const auto profile_bands = band_norms(profile, 2.0, bands);
  std::vector<double> times;
  std::vector<std::vector<double>> u_norms, f_norms;
  SpectralField u = u0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) {
      const SpectralField f0 = (mu * std::cos(s[i - 1])) * profile;
      const SpectralField f1 = (mu * std::cos(s[i])) * profile;
      u = step_heat(u, mu, f0, f1, (s[i] - s[i - 1]) / mu);
    }
    times.push_back(s[i] / mu);
    u_norms.push_back(band_norms(u, 2.0, bands));
    std::vector<double> fb = profile_bands;
    for (double& x : fb) x *= std::abs(mu * std::cos(s[i]));
    f_norms.push_back(std::move(fb));
  }
  HeatRatios r;
  r.rhs = besov(u0, tau, 2.0, 1.0, bands) + chemin_lerner_from_band_norms(times, f_norms, 1.0, tau, 1.0, bands.j_min());
  r.lhs_q1 = mu * chemin_lerner_from_band_norms(times, u_norms, 1.0, tau + 2.0, 1.0, bands.j_min());
  r.lhs_qinf = chemin_lerner_from_band_norms(times, u_norms, kInf, tau, 1.0, bands.j_min());
  return r;
}

std::vector<LemmaReport> check_heat_regularity(const LemmaSuiteConfig& config, const std::vector<double>& mu_values) {
  check_trials(config);
  if (mu_values.empty()) throw std::invalid_argument("check_heat_regularity: no mu values");
  const int d = config.d;
  const double tau = 0.0;
  std::string mus;
  for (double mu : mu_values) mus += (mus.empty() ? "" : "|") + fmt(mu);
  Collector q11("heat_regularity", param_list(d, {{"p", "2"}, {"tau", fmt(tau)}, {"q1", "1"}, {"q2", "1"}, {"mu", mus}}));
  Collector qi1("heat_regularity",
                param_list(d, {{"p", "2"}, {"tau", fmt(tau)}, {"q1", "inf"}, {"q2", "1"}, {"mu", mus}}));
  bool uniform = true;

  for (int n : config.sizes) {
    const Grid g = make_grid(d, n);
    const DyadicBands bands = build_partition(g);
    q11.begin_size(n);
    qi1.begin_size(n);
    std::vector<double> max11(mu_values.size(), 0.0), maxi1(mu_values.size(), 0.0);
    for (int trial = 0; trial < config.trials; ++trial) {
      const SpectralField u0 = rough(g, Rank::scalar, config.seed, kU, trial);
      const SpectralField profile = rough(g, Rank::scalar, config.seed, kF, trial);
      for (std::size_t im = 0; im < mu_values.size(); ++im) {
        const HeatRatios h = heat_regularity_ratios(u0, profile, mu_values[im], bands, tau);
        q11.add(h.lhs_q1, h.rhs);
        qi1.add(h.lhs_qinf, h.rhs);
        if (h.rhs > 0.0) {
          max11[im] = std::max(max11[im], h.lhs_q1 / h.rhs);
          maxi1[im] = std::max(maxi1[im], h.lhs_qinf / h.rhs);
        }
      }
    }
    q11.end_size();
    qi1.end_size();
    for (const auto* per_mu : {&max11, &maxi1}) {
      const auto [lo, hi] = std::minmax_element(per_mu->begin(), per_mu->end());
      uniform = uniform && *lo > 0.0 && *hi / *lo - 1.0 <= 0.25;
    }
  }
  return {q11.positive(0.25, uniform), qi1.positive(0.25, uniform)};
}

std::vector<LemmaReport> check_composition(const LemmaSuiteConfig& config, const std::vector<double>& gamma_values) {
  check_trials(config);
  const int d = config.d;
  const double amplitude = 0.3;
  struct Case {
    double gamma, s, p;
  };
  std::vector<Case> cases;
  for (double gamma : gamma_values) {
    for (double p : {2.0, 4.0}) cases.push_back({gamma, 0.5, p});
  }
  std::vector<Collector> cs;
  for (const Case& c : cases) {
    cs.emplace_back("composition", param_list(d, {{"gamma", fmt(c.gamma)}, {"s", fmt(c.s)}, {"p", fmt(c.p)},
                                                  {"linf", fmt(amplitude)}}));
  }
  for (int n : config.sizes) {
    const Grid g = make_grid(d, n);
    const DyadicBands bands = build_partition(g);
    for (Collector& c : cs) c.begin_size(n);
    for (int trial = 0; trial < config.trials; ++trial) {
      SpectralField f = rough(g, Rank::scalar, config.seed, kF, trial);
      f *= amplitude / linf(f);
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const SpectralField G = pressure_terms(f, cases[i].gamma).k;
        cs[i].add(besov(G, cases[i].s, cases[i].p, 1.0, bands), besov(f, cases[i].s, cases[i].p, 1.0, bands));
      }
    }
    for (Collector& c : cs) c.end_size();
  }
  std::vector<LemmaReport> out;
  for (Collector& c : cs) out.push_back(c.positive(0.25));
  return out;
}

OscillatoryTable oscillatory_table(int d, int n, double p, int m_max, double nu) {
  if (m_max < 2) throw std::invalid_argument("oscillatory_table: need m_max >= 2 for a fit");
  const Grid g = make_grid(d, n);
  const DyadicBands bands = build_partition(g);
  OscillatoryTable t{d, n, p, nu, {}, {}, {}, 0.0};
  for (int m = 0; m <= m_max; ++m) {
    const double eps = std::ldexp(1.0, -m);
    const SpectralField v = oscillatory(g, eps);
    const auto [lo, hi] = split_low_high(v, nu, bands);
    t.m.push_back(m);
    t.epsilon.push_back(eps);
    t.norm.push_back(besov(lo, d / 2.0 - 1.0, 2.0, 1.0, bands) + besov(hi, d / p - 1.0, p, 1.0, bands));
  }
  // slope of log norm against log ε over m >= 1
  double mx = 0.0, my = 0.0;
  const int count = m_max;
  for (int m = 1; m <= m_max; ++m) {
    mx += std::log(t.epsilon[m]);
    my += std::log(t.norm[m]);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double dx = std::log(t.epsilon[m]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(t.norm[m]) - my);
  }
  t.slope = sxy / sxx;
  return t;
}

std::vector<LemmaReport> check_oscillatory_scaling(const LemmaSuiteConfig& config, const std::vector<double>& p_values) {
  const int m_max = 5;
  // 3·2^{m_max} must stay below N
  const int n = 4 << m_max;
  std::vector<LemmaReport> out;
  for (double p : p_values) {
    const OscillatoryTable t = oscillatory_table(config.d, n, p, m_max);
    const double exponent = 1.0 - config.d / p;
    Collector c("oscillatory", param_list(config.d, {{"p", fmt(p)}, {"N", std::to_string(n)}, {"m", "1..5"},
                                                     {"slope", fmt(t.slope)}}));
    c.begin_size(n);
    // constant C in ‖v₀‖ <= C ε^{1−d/p}, relative to the ε = 1 baseline
    for (std::size_t i = 1; i < t.m.size(); ++i) c.add(t.norm[i], t.norm[0] * std::pow(t.epsilon[i], exponent));
    c.end_size();
    out.push_back(c.positive(0.0, std::abs(t.slope - exponent) <= 0.1));
  }
  return out;
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"bernstein", "product", "commutator", "heat", "composition", "oscillatory"};
  return ids;
}

std::vector<LemmaReport> run_lemmas(const std::vector<std::string>& ids, const LemmaSuiteConfig& config) {
  for (const std::string& id : ids) {
    if (std::find(lemma_ids().begin(), lemma_ids().end(), id) == lemma_ids().end()) {
      throw UnknownLemma("unknown lemma id: " + id);
    }
  }
  std::vector<LemmaReport> out;
  auto append = [&](std::vector<LemmaReport> r) { out.insert(out.end(), r.begin(), r.end()); };
  for (const std::string& id : ids) {
    if (id == "bernstein") append(check_bernstein(config));
    if (id == "product") append(check_product_laws(config));
    if (id == "commutator") append(check_commutators(config));
    if (id == "heat") append(check_heat_regularity(config));
    if (id == "composition") append(check_composition(config));
    if (id == "oscillatory") append(check_oscillatory_scaling(config));
  }
  return out;
}

void write_lemmas_csv(const std::string& path, const std::vector<LemmaReport>& reports) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "lemma,params,max_ratio,median_ratio,stable\n";
  for (const LemmaReport& r : reports) {
    os << r.lemma << ',' << r.params << ',' << format_double(r.max_ratio) << ',' << format_double(r.median_ratio) << ','
       << (r.stable ? "true" : "false") << '\n';
  }
}

}  // namespace bcns
