#include "bcns/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "bcns/operators.hpp"
#include "bcns/transform.hpp"

namespace bcns {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  // boost::hash_combine-style mixing over 64 bits
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4);
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 31);
}

}  // namespace

SpectralField random_field(const Grid& grid, Rank rank, std::uint64_t seed, std::uint64_t trial,
                           const RandomFieldOptions& options) {
  const double decay = options.decay < 0.0 ? grid.dim() / 2.0 + 1.0 : options.decay;
  SpectralField f(grid, rank);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t m = 1; m < grid.size(); ++m) {
      const auto k = grid.wavevector(m);
      bool keep = options.max_component < 0 ? grid.inside_dealias(m) : true;
      if (options.max_component >= 0) {
        for (int a = 0; a < grid.dim(); ++a) keep = keep && std::abs(k[a]) <= options.max_component;
      }
      if (!keep) continue;
      std::uint64_t key = mix(mix(seed, trial), static_cast<std::uint64_t>(c));
      for (int a = 0; a < 3; ++a) key = mix(key, static_cast<std::uint64_t>(static_cast<std::int64_t>(k[a])));
      std::mt19937_64 engine(key);
      const double re = normal(engine);
      const double im = normal(engine);
      normal.reset();
      comp[m] = std::pow(grid.k_squared(m), -0.5 * decay) * cplx(re, im);
    }
  }
  f.symmetrize();
  if (options.l2 > 0.0) {
    const double norm = f.l2();
    if (norm > 0.0) f *= options.l2 / norm;
  }
  return f;
}

SpectralField taylor_green(const Grid& grid) {
  SpectralField v = SpectralField::vector(grid);
  const SpectralField u0 = forward_transform(sample(grid, [](auto x) { return std::cos(x[0]) * std::sin(x[1]); }));
  const SpectralField u1 = forward_transform(sample(grid, [](auto x) { return -std::sin(x[0]) * std::cos(x[1]); }));
  std::ranges::copy(u0.component(0), v.component(0).begin());
  std::ranges::copy(u1.component(0), v.component(1).begin());
  return v;
}

SpectralField compressible_mode(const Grid& grid, double amplitude) {
  SpectralField v = SpectralField::vector(grid);
  const SpectralField u0 = forward_transform(sample(grid, [&](auto x) { return amplitude * std::sin(x[0]); }));
  std::ranges::copy(u0.component(0), v.component(0).begin());
  return v;
}

SpectralField bump(const Grid& grid) {
  const int d = grid.dim();
  return forward_transform(sample(grid, [d](auto x) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += std::cos(x[static_cast<std::size_t>(a)]) - 1.0;
    return std::exp(s);
  }));
}

SpectralField oscillatory(const Grid& grid, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("oscillatory: epsilon must be positive");
  const double freq = 1.0 / epsilon;
  const double rounded = std::round(freq);
  if (std::abs(freq - rounded) > 1e-9 * freq || rounded < 1.0) {
    throw std::invalid_argument("oscillatory: 1/epsilon must be an integer so sin(x1/epsilon) is periodic");
  }
  if (3.0 * rounded >= grid.n()) throw std::invalid_argument("oscillatory: 1/epsilon exceeds the dealiased band");
  const int d = grid.dim();
  SpectralField v = SpectralField::vector(grid);
  const SpectralField u0 = forward_transform(sample(grid, [&](auto x) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += std::cos(x[static_cast<std::size_t>(a)]) - 1.0;
    return std::sin(rounded * x[0]) * std::exp(s);
  }));
  std::ranges::copy(u0.component(0), v.component(0).begin());
  return v;
}

}  // namespace bcns
