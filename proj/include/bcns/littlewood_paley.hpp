#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bcns/spectral_field.hpp"

namespace bcns {

/// Radial profiles of the dyadic partition.
///
/// chi(r) = 1 for r <= 3/4 and 0 for r >= 4/3, joined by the C^∞
/// transition θ(t) = h(1−t)/(h(t)+h(1−t)), h(t) = exp(−1/t) (t > 0).
/// phi(r) = chi(r/2) − chi(r) is supported in [3/4, 8/3].
double chi(double r);
double phi(double r);

struct BesovIndex {
  double s = 0.0;
  double p = 2.0;  ///< integrability in [1, ∞]
  double r = 1.0;  ///< summation exponent in [1, ∞]
};

/// The Littlewood-Paley decomposition attached to one grid.
///
/// Bands run over j in [j_min, j_max] with j_min = −1 and
/// j_max = ceil(log2(√d·N/2)) + 1; together they cover every nonzero
/// lattice mode and Σ_j φ(2^{−j}|k|) = 1 there. The zero mode belongs to
/// no band: homogeneous norms ignore the mean.
class DyadicBands {
 public:
  explicit DyadicBands(Grid grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  bool valid(int j) const { return j >= j_min_ && j <= j_max_; }

  /// φ(2^{−j}|k|) for every lattice mode of band j.
  std::span<const double> multiplier(int j) const;

 private:
  Grid grid_;
  int j_min_;
  int j_max_;
  std::vector<std::vector<double>> tables_;
};

DyadicBands build_partition(const Grid& grid);

/// Δ_j f. Throws std::out_of_range for j outside [j_min, j_max].
SpectralField dyadic_block(const SpectralField& f, int j, const DyadicBands& bands);

/// S_j f: multiplier χ(2^{−j}|k|), defined for every integer j. Keeps the mean.
SpectralField low_cutoff(const SpectralField& f, int j, const DyadicBands& bands);

/// ‖Δ_j f‖_{L^p} for every band, indexed by j − j_min.
std::vector<double> band_norms(const SpectralField& f, double p, const DyadicBands& bands);

/// ℓ^r combination of 2^{js}·norms[j − j_min].
double weighted_band_sum(std::span<const double> norms, double s, double r, int j_min);

/// Homogeneous Besov norm ‖(2^{js}‖Δ_j f‖_{L^p})_j‖_{ℓ^r}; the mean is ignored.
double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicBands& bands);

/// low = Σ_{2^j ν ≤ 1} Δ_j f, high = Σ_{2^j ν > 1} Δ_j f. Throws for ν <= 0.
std::pair<SpectralField, SpectralField> split_low_high(const SpectralField& f, double nu,
                                                        const DyadicBands& bands);

/// True when band j counts as low frequency for viscosity ν.
bool is_low_band(int j, double nu);

/// Time-indexed fields, times nondecreasing.
struct TimeSeries {
  std::vector<double> times;
  std::vector<SpectralField> fields;
};

/// Chemin-Lerner norm Σ_j 2^{js}‖Δ_j u‖_{L^q(0,T;L^p)} (ℓ^r over bands).
/// Time norms use the trapezoid rule on the snapshots for q < ∞ and the
/// running maximum for q = ∞. Throws when q < ∞ and fewer than 2 snapshots
/// are given, or when times decrease.
double chemin_lerner_norm(const TimeSeries& series, double q, const BesovIndex& idx,
                          const DyadicBands& bands);

/// Same as above from precomputed per-snapshot band norms.
double chemin_lerner_from_band_norms(std::span<const double> times,
                                     std::span<const std::vector<double>> norms, double q, double s,
                                     double r, int j_min);

}  // namespace bcns
