#pragma once

#include "bcns/littlewood_paley.hpp"
#include "bcns/spectral_field.hpp"

namespace bcns {

/// Leray projection P: v̂ − k(k·v̂)/|k|² per nonzero mode; the mean passes through.
SpectralField leray_project(const SpectralField& v);

/// Gradient projection Q = ∇Δ⁻¹div: k(k·v̂)/|k|² per nonzero mode; the mean is dropped.
SpectralField compressible_project(const SpectralField& v);

/// Homogeneous paraproduct T_u v = Σ_j S'_{j−1}u · Δ_j v over the valid bands,
/// where S'_{j−1} = S_{j−1} minus the mean. Products are dealiased.
///
/// With this convention the discrete Bony identity is exact:
///   uv = T_u v + T_v u + R(u,v) + ū·v + v̄·u − ū·v̄,
/// with ū, v̄ the means.
SpectralField paraproduct(const SpectralField& u, const SpectralField& v, const DyadicBands& bands);

/// Remainder R(u,v) = Σ_j Δ_j u · (Δ_{j−1} + Δ_j + Δ_{j+1}) v. Symmetric in (u, v).
SpectralField remainder(const SpectralField& u, const SpectralField& v, const DyadicBands& bands);

/// [u·∇, Δ_j] v = u·∇(Δ_j v) − Δ_j(u·∇v) for a vector u and scalar or vector v.
SpectralField commutator_transport(const SpectralField& u, const SpectralField& v, int j,
                                   const DyadicBands& bands);

}  // namespace bcns
