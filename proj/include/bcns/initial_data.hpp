#pragma once

#include <cstdint>

#include "bcns/spectral_field.hpp"

namespace bcns {

struct RandomFieldOptions {
  /// Amplitude envelope |k|^{−decay}; the default d/2 + 1 is applied when < 0.
  double decay = -1.0;
  /// Keep only modes with every |k_i| <= max_component; < 0 means the 2/3 ball.
  int max_component = -1;
  /// Rescale so the coefficient ℓ² norm equals this (skipped when <= 0).
  double l2 = 1.0;
};

/// Seeded random real field: i.i.d. complex Gaussian coefficients times the
/// envelope, Hermitian-symmetrized, zero mean.
///
/// Each mode's coefficient depends only on (seed, trial, component, k), so
/// the same seed on a finer grid reproduces the coarse field's modes and
/// adds the extra high frequencies.
SpectralField random_field(const Grid& grid, Rank rank, std::uint64_t seed, std::uint64_t trial,
                           const RandomFieldOptions& options = {});

/// (cos x₁ sin x₂, −sin x₁ cos x₂[, 0]); divergence-free, decays as e^{−2μt}.
SpectralField taylor_green(const Grid& grid);

/// amplitude·(sin x₁, 0[, 0]) = amplitude·∇(−cos x₁): a curl-free single mode.
SpectralField compressible_mode(const Grid& grid, double amplitude);

/// Smooth periodic bump exp(Σ_i (cos x_i − 1)).
SpectralField bump(const Grid& grid);

/// (sin(x₁/ε)·bump(x), 0[, 0]). ε must be 1/n for an integer n that fits
/// on the grid; throws std::invalid_argument otherwise.
SpectralField oscillatory(const Grid& grid, double epsilon);

}  // namespace bcns
