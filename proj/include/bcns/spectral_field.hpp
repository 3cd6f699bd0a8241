#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bcns/grid.hpp"

namespace bcns {

using cplx = std::complex<double>;

enum class Rank { scalar, vector };

/// Fourier coefficients of a real scalar or vector field on the torus.
///
/// Normalization: c_k = N^{-d} Σ_x f(x) e^{-i k·x}, so cos(k·x) has
/// coefficient 1/2 at ±k and the constant 1 has coefficient 1 at k = 0.
/// Storage is component-major; each component follows the Grid lattice
/// order.
class SpectralField {
 public:
  SpectralField(Grid grid, Rank rank);

  static SpectralField scalar(const Grid& grid) { return SpectralField(grid, Rank::scalar); }
  static SpectralField vector(const Grid& grid) { return SpectralField(grid, Rank::vector); }

  const Grid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return rank_ == Rank::scalar ? 1 : grid_.dim(); }
  std::size_t modes() const { return grid_.size(); }

  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;
  std::span<cplx> data() { return coeffs_; }
  std::span<const cplx> data() const { return coeffs_; }

  cplx& at(int c, std::size_t m) { return coeffs_[static_cast<std::size_t>(c) * grid_.size() + m]; }
  cplx at(int c, std::size_t m) const { return coeffs_[static_cast<std::size_t>(c) * grid_.size() + m]; }

  /// Zero-mode coefficient of component c (the spatial mean).
  double mean(int c = 0) const { return at(c, 0).real(); }

  /// Scalar field holding component c of a vector field.
  SpectralField extract(int c) const;
  /// Vector field assembled from d scalar components.
  static SpectralField assemble(std::span<const SpectralField> parts);

  /// Coefficient ℓ² norm over all components (equals the mean-normalized
  /// L² norm of the physical field).
  double l2() const;
  /// Largest deviation from Hermitian symmetry c(-k) = conj(c(k)).
  double hermitian_defect() const;
  /// Replaces every coefficient by the Hermitian average so the field is real.
  void symmetrize();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

 private:
  Grid grid_;
  Rank rank_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(SpectralField a, double s);
SpectralField operator-(SpectralField a);

/// Largest coefficient difference between two fields of the same shape.
double max_abs_diff(const SpectralField& a, const SpectralField& b);

/// Real samples on the physical grid, component-major.
struct RealField {
  Grid grid;
  Rank rank = Rank::scalar;
  std::vector<double> values;

  RealField(Grid g, Rank r);
  int components() const { return rank == Rank::scalar ? 1 : grid.dim(); }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;
};

/// Mean-normalized L^p norm ((2π)^{-d}∫|f|^p)^{1/p} by grid quadrature;
/// vector fields use the pointwise Euclidean magnitude. p = ∞ gives the max.
double lp_norm(const RealField& f, double p);

/// Largest pointwise absolute value over all components.
double max_abs(const RealField& f);

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what);

}  // namespace bcns
