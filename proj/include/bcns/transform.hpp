#pragma once

#include "bcns/spectral_field.hpp"

namespace bcns {

/// Physical samples -> Fourier coefficients. Throws on a sample array that
/// does not match the grid shape.
SpectralField forward_transform(const RealField& samples);

/// Fourier coefficients -> physical samples (real part; the imaginary part
/// vanishes for Hermitian-symmetric input).
RealField inverse_transform(const SpectralField& f);

/// Samples the scalar function fn(x) on the grid points.
template <class Fn>
RealField sample(const Grid& grid, Fn&& fn);

}  // namespace bcns

#include <array>
#include <numbers>

namespace bcns {

template <class Fn>
RealField sample(const Grid& grid, Fn&& fn) {
  RealField out(grid, Rank::scalar);
  const int n = grid.n();
  const double h = 2.0 * std::numbers::pi / n;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t rest = m;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      x[static_cast<std::size_t>(a)] = h * static_cast<double>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    out.values[m] = fn(x);
  }
  return out;
}

}  // namespace bcns
