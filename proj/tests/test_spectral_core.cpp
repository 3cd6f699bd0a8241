#include <cmath>
#include <numbers>
#include <sstream>

#include "bcns/grid.hpp"
#include "bcns/initial_data.hpp"
#include "bcns/littlewood_paley.hpp"
#include "bcns/operators.hpp"
#include "bcns/snapshot.hpp"
#include "bcns/transform.hpp"
#include "doctest.h"

using namespace bcns;

namespace {

double max_abs_values(const RealField& a, const RealField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

// c(k) = Σ_p f(p) g(k − p) over all lattice pairs, no wraparound allowed.
SpectralField direct_convolution(const SpectralField& f, const SpectralField& g) {
  const Grid& grid = f.grid();
  SpectralField out = SpectralField::scalar(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (f.at(0, p) == cplx{}) continue;
    const auto kp = grid.wavevector(p);
    for (std::size_t q = 0; q < grid.size(); ++q) {
      if (g.at(0, q) == cplx{}) continue;
      const auto kq = grid.wavevector(q);
      std::array<int, 3> sum{kp[0] + kq[0], kp[1] + kq[1], kp[2] + kq[2]};
      bool inside = true;
      for (int a = 0; a < grid.dim(); ++a) inside = inside && sum[a] >= -grid.n() / 2 && sum[a] < grid.n() / 2;
      REQUIRE(inside);
      out.at(0, grid.index_of(sum)) += f.at(0, p) * g.at(0, q);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("make_grid validates shape and enumerates the lattice") {
  const Grid g = make_grid(2, 32);
  CHECK(g.size() == 32u * 32u);
  int kmin = 0, kmax = 0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    for (int a = 0; a < 2; ++a) {
      kmin = std::min(kmin, g.wavenumber(m, a));
      kmax = std::max(kmax, g.wavenumber(m, a));
    }
  }
  CHECK(kmin == -16);
  CHECK(kmax == 15);
  CHECK(make_grid(3, 8).size() == 512u);
  CHECK_THROWS_AS(make_grid(2, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 6), std::invalid_argument);
  // row-major: last axis fastest
  CHECK(g.wavevector(1) == std::array<int, 3>{0, 1, 0});
  CHECK(g.wavevector(32) == std::array<int, 3>{1, 0, 0});
  CHECK(g.index_of({-1, 2, 0}) == 31u * 32u + 2u);
}

TEST_CASE("forward_transform normalization") {
  const Grid g = make_grid(2, 16);
  const SpectralField c = forward_transform(sample(g, [](auto x) { return std::cos(x[0]); }));
  for (std::size_t m = 0; m < g.size(); ++m) {
    const auto k = g.wavevector(m);
    const double expected = (std::abs(k[0]) == 1 && k[1] == 0) ? 0.5 : 0.0;
    CHECK(std::abs(c.at(0, m) - cplx(expected)) <= 1e-13);
  }
  const SpectralField one = forward_transform(sample(g, [](auto) { return 1.0; }));
  CHECK(std::abs(one.at(0, 0) - cplx(1.0)) <= 1e-15);
  CHECK(one.l2() == doctest::Approx(1.0).epsilon(1e-14));

  RealField bad(g, Rank::scalar);
  bad.values.pop_back();
  CHECK_THROWS_AS(forward_transform(bad), std::invalid_argument);
}

TEST_CASE("round trip and Parseval on seeded random fields") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, dim == 2 ? 32 : 16);
    double worst_roundtrip = 0.0;
    double worst_parseval = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const SpectralField f = random_field(g, Rank::scalar, 7, trial, {.decay = 0.5, .max_component = g.n() / 2});
      const RealField x = inverse_transform(f);
      const RealField y = inverse_transform(forward_transform(x));
      worst_roundtrip = std::max(worst_roundtrip, max_abs_values(x, y) / max_abs(x));
      worst_parseval = std::max(worst_parseval, std::abs(lp_norm(x, 2.0) - f.l2()) / f.l2());
    }
    CHECK(worst_roundtrip <= 1e-12);
    CHECK(worst_parseval <= 1e-12);
  }
}

TEST_CASE("derivatives act on eigenmodes") {
  const Grid g = make_grid(2, 16);
  const SpectralField s = forward_transform(sample(g, [](auto x) { return std::sin(x[0]); }));
  const SpectralField c = forward_transform(sample(g, [](auto x) { return std::cos(x[0]); }));
  CHECK(max_abs_diff(derivative(s, 0, 1), c) <= 1e-12);
  CHECK(max_abs_diff(laplacian(c), -c) <= 1e-12);
  CHECK(max_abs_diff(derivative(c, 0, 2), -c) <= 1e-12);
  const SpectralField k = constant_field(g, 3.0);
  for (int axis : {0, 1}) {
    for (int order : {1, 2}) CHECK(derivative(k, axis, order).l2() == 0.0);
  }
  CHECK_THROWS_AS(derivative(s, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(derivative(s, 2, 1), std::invalid_argument);
}

TEST_CASE("inv_laplacian inverts -Δ on zero-mean fields") {
  const Grid g = make_grid(2, 16);
  const SpectralField s = forward_transform(sample(g, [](auto x) { return std::sin(x[0]); }));
  CHECK(max_abs_diff(inv_laplacian(s), s) <= 1e-14);
  const SpectralField c2 = forward_transform(sample(g, [](auto x) { return std::cos(2 * x[1]); }));
  CHECK(max_abs_diff(inv_laplacian(c2), 0.25 * c2) <= 1e-14);
  const SpectralField f = random_field(g, Rank::scalar, 3, 0);
  CHECK(max_abs_diff(-laplacian(inv_laplacian(f)), f) <= 1e-12 * f.l2());
  CHECK_THROWS_AS(inv_laplacian(s + constant_field(g, 1.0)), std::domain_error);
}

TEST_CASE("product_dealiased") {
  const Grid g = make_grid(2, 24);
  SUBCASE("identity element truncates to the 2/3 ball") {
    const SpectralField f = random_field(g, Rank::scalar, 11, 0, {.max_component = 12});
    CHECK(max_abs_diff(product_dealiased(constant_field(g, 1.0), f), dealias(f)) <= 1e-14);
  }
  SUBCASE("cos·cos") {
    const Grid g8 = make_grid(2, 8);
    const SpectralField c = forward_transform(sample(g8, [](auto x) { return std::cos(x[0]); }));
    const SpectralField expected =
        forward_transform(sample(g8, [](auto x) { return 0.5 + 0.5 * std::cos(2 * x[0]); }));
    CHECK(max_abs_diff(product_dealiased(c, c), expected) <= 1e-12);
  }
  SUBCASE("band-limited product matches direct convolution") {
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      const SpectralField f = random_field(g, Rank::scalar, 5, trial, {.max_component = 3});
      const SpectralField h = random_field(g, Rank::scalar, 6, trial, {.max_component = 3});
      CHECK(max_abs_diff(product_dealiased(f, h), direct_convolution(f, h)) <= 1e-14);
    }
  }
  SUBCASE("symmetric and bilinear") {
    const SpectralField f = random_field(g, Rank::scalar, 1, 0);
    const SpectralField h = random_field(g, Rank::scalar, 2, 0);
    const SpectralField k = random_field(g, Rank::scalar, 3, 0);
    CHECK(max_abs_diff(product_dealiased(f, h), product_dealiased(h, f)) == 0.0);
    const SpectralField lhs = product_dealiased(2.0 * f + k, h);
    const SpectralField rhs = 2.0 * product_dealiased(f, h) + product_dealiased(k, h);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-14);
  }
  CHECK_THROWS_AS(product_dealiased(SpectralField::scalar(g), SpectralField::scalar(make_grid(2, 16))),
                  std::invalid_argument);
}

TEST_CASE("derivative commutes with dyadic blocks") {
  const Grid g = make_grid(2, 32);
  const DyadicBands bands = build_partition(g);
  const SpectralField f = random_field(g, Rank::scalar, 9, 0);
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    CHECK(max_abs_diff(derivative(dyadic_block(f, j, bands), 0, 1), dyadic_block(derivative(f, 0, 1), j, bands)) <=
          1e-12);
  }
}

TEST_CASE("snapshot round trip is bit exact") {
  const Grid g = make_grid(2, 16);
  const SpectralField v = random_field(g, Rank::vector, 4, 0);
  std::stringstream ss;
  write_snapshot(ss, v, 0.1 + 0.2);
  const std::string bytes = ss.str();
  CHECK(bytes.rfind("BCNS1 2 16 1 0.30000000000000004\n", 0) == 0);
  CHECK(bytes.size() == std::string("BCNS1 2 16 1 0.30000000000000004\n").size() + 16 * 16 * 2 * 16);
  const Snapshot back = read_snapshot(ss);
  CHECK(back.time == 0.1 + 0.2);
  CHECK(back.field.rank() == Rank::vector);
  CHECK(max_abs_diff(back.field, v) == 0.0);

  std::stringstream again;
  write_snapshot(again, back.field, back.time);
  CHECK(again.str() == bytes);

  std::stringstream corrupt("BCNS2 2 16 0 0\n");
  CHECK_THROWS_AS(read_snapshot(corrupt), std::runtime_error);
  std::stringstream truncated("BCNS1 2 16 0 0\nabc");
  CHECK_THROWS_AS(read_snapshot(truncated), std::runtime_error);
}
