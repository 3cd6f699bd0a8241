#pragma once

#include "bcns/spectral_field.hpp"

namespace bcns {

/// Multiplies every mode by (i k_axis)^order. Axis is 0-based; order is 1
/// or 2. The Nyquist frequency k_axis = -N/2 is zeroed for order 1 so the
/// result stays real.
SpectralField derivative(const SpectralField& f, int axis, int order);

SpectralField gradient(const SpectralField& scalar);
SpectralField divergence(const SpectralField& vec);
SpectralField laplacian(const SpectralField& f);

/// Scalar curl ∂₁v₂ − ∂₂v₁ in 2D; the full curl (a vector) in 3D.
SpectralField curl(const SpectralField& vec);

/// (−Δ)⁻¹: divides each nonzero mode by |k|² and zeroes the mean.
/// Throws std::domain_error when the input mean exceeds 1e−12·‖f‖.
SpectralField inv_laplacian(const SpectralField& f);

/// Zeroes every mode with some |k_i| >= N/3.
SpectralField dealias(SpectralField f);

/// Pointwise product of two scalar fields with 2/3-rule truncation applied
/// to both factors and to the result.
SpectralField product_dealiased(const SpectralField& f, const SpectralField& g);

/// Scalar times vector, componentwise product_dealiased.
SpectralField multiply(const SpectralField& scalar, const SpectralField& vec);

/// Dealiased dot product of two vector fields.
SpectralField dot(const SpectralField& u, const SpectralField& v);

/// Dealiased transport term u·∇w for a vector u and a scalar or vector w.
SpectralField advect(const SpectralField& u, const SpectralField& w);

/// Field with a constant value (scalar) or constant vector.
SpectralField constant_field(const Grid& grid, double value);

/// Copy with the zero mode removed.
SpectralField remove_mean(SpectralField f);

}  // namespace bcns
