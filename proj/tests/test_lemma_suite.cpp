#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcns/calculus.hpp"
#include "bcns/initial_data.hpp"
#include "bcns/lemma_suite.hpp"
#include "bcns/littlewood_paley.hpp"
#include "bcns/operators.hpp"
#include "bcns/solvers.hpp"
#include "bcns/transform.hpp"
#include "doctest.h"

using namespace bcns;

namespace {

LemmaSuiteConfig small(std::vector<int> sizes, int trials) {
  LemmaSuiteConfig c;
  c.sizes = std::move(sizes);
  c.trials = trials;
  return c;
}

void check_finite(const LemmaReport& r) {
  for (double x : r.max_by_size) {
    CHECK(std::isfinite(x));
    CHECK(x >= 0.0);
  }
  for (double x : r.min_by_size) CHECK(x >= 0.0);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bernstein annulus bounds are exact and the grid set includes 16") {
  const auto reports = check_bernstein(small({32}, 10));
  REQUIRE(reports.size() == 4);
  const LemmaReport& annulus = reports[0];
  CHECK(annulus.lemma == "bernstein_annulus");
  CHECK(annulus.sizes == std::vector<int>{16, 32});
  for (std::size_t i = 0; i < annulus.sizes.size(); ++i) {
    CHECK(annulus.min_by_size[i] >= 0.75);
    CHECK(annulus.max_by_size[i] <= 8.0 / 3.0);
  }
  CHECK(annulus.stable);
  for (const auto& r : reports) check_finite(r);
  CHECK(reports[3].lemma == "bernstein_lp_lq");

  CHECK_THROWS_AS(check_bernstein(small({32}, 9)), std::invalid_argument);
}

TEST_CASE("constant field has no band content") {
  const Grid g = make_grid(2, 16);
  const DyadicBands bands = build_partition(g);
  const SpectralField c = forward_transform(sample(g, [](auto) { return 3.0; }));
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) CHECK(dyadic_block(c, j, bands).l2() == 0.0);
}

TEST_CASE("product laws: negative remainder diverges, positive cases finite") {
  const auto reports = check_product_laws(small({32, 64}, 10));
  REQUIRE(reports.size() == 6);
  int negatives = 0;
  for (const auto& r : reports) {
    check_finite(r);
    if (r.negative_case) {
      ++negatives;
      CHECK(r.lemma == "remainder");
      CHECK_FALSE(r.stable);
      CHECK(r.diverges);
      CHECK(r.max_by_size[1] >= 1.25 * r.max_by_size[0]);
    }
  }
  CHECK(negatives == 1);
  CHECK(reports[0].lemma == "paraproduct");
  CHECK(reports[0].stable);
}

TEST_CASE("commutator with a constant velocity vanishes") {
  const Grid g = make_grid(2, 32);
  const DyadicBands bands = build_partition(g);
  const SpectralField parts[2] = {forward_transform(sample(g, [](auto) { return 0.7; })),
                                  forward_transform(sample(g, [](auto) { return -1.3; }))};
  const SpectralField u = SpectralField::assemble(parts);
  const SpectralField v = random_field(g, Rank::scalar, 4, 0);
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    CHECK(commutator_transport(u, v, j, bands).l2() <= 1e-13 * v.l2());
  }
}

TEST_CASE("commutator reports are finite on small runs") {
  const auto reports = check_commutators(small({16, 32}, 3));
  REQUIRE(reports.size() == 4);
  for (const auto& r : reports) {
    check_finite(r);
    CHECK_FALSE(r.negative_case);
    CHECK(r.max_ratio > 0.0);
  }
}

TEST_CASE("heat ratios on an unforced eigenmode") {
  const Grid g = make_grid(2, 32);
  const DyadicBands bands = build_partition(g);
  const SpectralField u0 = forward_transform(sample(g, [](auto x) { return std::cos(x[0]); }));
  const SpectralField zero(g, Rank::scalar);
  // |k| = 1 sits in bands −1 and 0 with weights φ(2), φ(1); ‖cos‖_{L²} = 1/√2
  auto cos_besov = [](double s) { return (std::exp2(-s) * phi(2.0) + phi(1.0)) / std::sqrt(2.0); };
  for (double mu : {0.1, 1.0, 10.0}) {
    const HeatRatios h = heat_regularity_ratios(u0, zero, mu, bands);
    CHECK(h.rhs == doctest::Approx(cos_besov(0.0)).epsilon(1e-12));
    CHECK(h.lhs_qinf == doctest::Approx(h.rhs).epsilon(1e-12));
    // μ∫₀^{1/μ} e^{−μt} dt = 1 − e^{−1}
    CHECK(h.lhs_q1 == doctest::Approx((1.0 - std::exp(-1.0)) * cos_besov(2.0)).epsilon(1e-4));
  }
  CHECK_THROWS_AS(heat_regularity_ratios(u0, zero, 0.0, bands), std::invalid_argument);
}

TEST_CASE("heat regularity is uniform in mu") {
  const auto reports = check_heat_regularity(small({16, 32}, 3));
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    check_finite(r);
    CHECK(r.stable);
  }
  CHECK(reports[1].params.find("q1=inf") != std::string::npos);
}

TEST_CASE("composition: gamma 2 is the identity, gamma 1 vanishes") {
  const auto reports = check_composition(small({16, 32}, 5), {2.0, 1.0});
  REQUIRE(reports.size() == 4);
  for (int i : {0, 1}) {
    CHECK(reports[i].min_by_size[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reports[i].max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reports[i].stable);
  }
  for (int i : {2, 3}) {
    CHECK(reports[i].max_ratio == 0.0);
    CHECK(reports[i].stable);
  }
  const auto generic = check_composition(small({16, 32}, 5));
  REQUIRE(generic.size() == 4);
  for (const auto& r : generic) {
    check_finite(r);
    CHECK(r.max_ratio > 0.0);
    CHECK(r.max_ratio < 10.0);
  }
}

TEST_CASE("oscillatory table") {
  const OscillatoryTable t = oscillatory_table(2, 128, 4.0);
  REQUIRE(t.m.size() == 6);
  CHECK(t.epsilon[0] == 1.0);
  CHECK(t.epsilon[5] == 1.0 / 32.0);

  // ε = 1 baseline equals the norm of the field itself
  const Grid g = make_grid(2, 128);
  const DyadicBands bands = build_partition(g);
  const auto [lo, hi] = split_low_high(oscillatory(g, 1.0), 1.0, bands);
  const double direct = besov_norm(lo, {0.0, 2.0, 1.0}, bands) + besov_norm(hi, {-0.5, 4.0, 1.0}, bands);
  CHECK(t.norm[0] == doctest::Approx(direct).epsilon(1e-14));

  for (std::size_t i = 2; i < t.norm.size(); ++i) CHECK(t.norm[i] < t.norm[i - 1]);
  CHECK(std::abs(t.slope - 0.5) <= 0.1);

  CHECK_THROWS_AS(oscillatory(g, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(oscillatory_table(2, 128, 4.0, 1), std::invalid_argument);

  const auto reports = check_oscillatory_scaling(LemmaSuiteConfig{}, {4.0});
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].stable);
  CHECK(reports[0].sizes == std::vector<int>{128});
}

TEST_CASE("run_lemmas is deterministic and rejects unknown ids") {
  const auto dir = std::filesystem::temp_directory_path() / "bcns_lemma_test";
  std::filesystem::create_directories(dir);
  const LemmaSuiteConfig cfg = small({16, 32}, 10);
  write_lemmas_csv((dir / "a.csv").string(), run_lemmas({"composition", "bernstein"}, cfg));
  write_lemmas_csv((dir / "b.csv").string(), run_lemmas({"composition", "bernstein"}, cfg));
  const std::string a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a.rfind("lemma,params,max_ratio,median_ratio,stable\ncomposition,d=2;gamma=1.4;s=0.5;p=2;linf=0.3,", 0) == 0);

  LemmaSuiteConfig other = cfg;
  other.seed = 99;
  const auto r1 = run_lemmas({"composition"}, cfg);
  const auto r2 = run_lemmas({"composition"}, other);
  REQUIRE(r1.size() == r2.size());
  bool differs = false;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].stable == r2[i].stable);
    differs = differs || r1[i].max_ratio != r2[i].max_ratio;
  }
  CHECK(differs);

  CHECK_THROWS_AS(run_lemmas({"bernstein", "nope"}, cfg), UnknownLemma);
  CHECK(lemma_ids().size() == 6);
  std::filesystem::remove_all(dir);
}
