#include "bcns/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bcns/transform.hpp"

namespace bcns {
namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;

double h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double theta(double t) {
  const double a = h(1.0 - t);
  return a / (h(t) + a);
}

void check_exponent(double x, const char* name) {
  if (!(x >= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [1, ∞]");
}

}  // namespace

double chi(double r) {
  if (r <= kInner) return 1.0;
  if (r >= kOuter) return 0.0;
  return theta((r - kInner) / (kOuter - kInner));
}

double phi(double r) { return chi(0.5 * r) - chi(r); }

DyadicBands::DyadicBands(Grid grid) : grid_(std::move(grid)), j_min_(-1) {
  const double kmax = std::sqrt(static_cast<double>(grid_.dim())) * grid_.n() / 2.0;
  j_max_ = static_cast<int>(std::ceil(std::log2(kmax))) + 1;
  tables_.reserve(static_cast<std::size_t>(j_max_ - j_min_ + 1));
  for (int j = j_min_; j <= j_max_; ++j) {
    std::vector<double> t(grid_.size());
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t m = 0; m < grid_.size(); ++m) t[m] = phi(scale * grid_.k_norm(m));
    tables_.push_back(std::move(t));
  }
}

std::span<const double> DyadicBands::multiplier(int j) const {
  if (!valid(j)) {
    throw std::out_of_range("band index " + std::to_string(j) + " outside [" + std::to_string(j_min_) + ", " +
                            std::to_string(j_max_) + "]");
  }
  return tables_[static_cast<std::size_t>(j - j_min_)];
}

DyadicBands build_partition(const Grid& grid) { return DyadicBands(grid); }

SpectralField dyadic_block(const SpectralField& f, int j, const DyadicBands& bands) {
  require_same_grid(f, SpectralField::scalar(bands.grid()), "dyadic_block");
  const auto mult = bands.multiplier(j);
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t m = 0; m < comp.size(); ++m) comp[m] *= mult[m];
  }
  return out;
}

SpectralField low_cutoff(const SpectralField& f, int j, const DyadicBands& bands) {
  const Grid& g = bands.grid();
  require_same_grid(f, SpectralField::scalar(g), "low_cutoff");
  const double scale = std::ldexp(1.0, -j);
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t m = 0; m < comp.size(); ++m) comp[m] *= chi(scale * g.k_norm(m));
  }
  return out;
}

std::vector<double> band_norms(const SpectralField& f, double p, const DyadicBands& bands) {
  check_exponent(p, "p");
  const int count = bands.j_max() - bands.j_min() + 1;
  std::vector<double> out(static_cast<std::size_t>(count), 0.0);
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    const auto mult = bands.multiplier(j);
    double& slot = out[static_cast<std::size_t>(j - bands.j_min())];
    if (p == 2.0) {
      // Parseval: the mean-normalized L² norm is the coefficient ℓ² norm.
      double acc = 0.0;
      for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        for (std::size_t m = 0; m < comp.size(); ++m) {
          if (mult[m] != 0.0) acc += mult[m] * mult[m] * std::norm(comp[m]);
        }
      }
      slot = std::sqrt(acc);
    } else {
      bool empty = true;
      for (int c = 0; c < f.components() && empty; ++c) {
        auto comp = f.component(c);
        for (std::size_t m = 0; m < comp.size(); ++m) {
          if (mult[m] != 0.0 && comp[m] != cplx{}) {
            empty = false;
            break;
          }
        }
      }
      slot = empty ? 0.0 : lp_norm(inverse_transform(dyadic_block(f, j, bands)), p);
    }
  }
  return out;
}

double weighted_band_sum(std::span<const double> norms, double s, double r, int j_min) {
  check_exponent(r, "r");
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double term = std::exp2(s * (static_cast<int>(i) + j_min)) * norms[i];
    if (std::isinf(r)) {
      acc = std::max(acc, term);
    } else if (r == 1.0) {
      acc += term;
    } else {
      acc += std::pow(term, r);
    }
  }
  if (!std::isinf(r) && r != 1.0) acc = std::pow(acc, 1.0 / r);
  return acc;
}

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicBands& bands) {
  const auto norms = band_norms(f, idx.p, bands);
  return weighted_band_sum(norms, idx.s, idx.r, bands.j_min());
}

bool is_low_band(int j, double nu) { return std::ldexp(nu, j) <= 1.0; }

std::pair<SpectralField, SpectralField> split_low_high(const SpectralField& f, double nu,
                                                        const DyadicBands& bands) {
  if (!(nu > 0.0)) throw std::invalid_argument("split_low_high: nu must be positive");
  require_same_grid(f, SpectralField::scalar(bands.grid()), "split_low_high");
  std::vector<double> low_mult(bands.grid().size(), 0.0);
  std::vector<double> high_mult(bands.grid().size(), 0.0);
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    auto& target = is_low_band(j, nu) ? low_mult : high_mult;
    const auto mult = bands.multiplier(j);
    for (std::size_t m = 0; m < target.size(); ++m) target[m] += mult[m];
  }
  SpectralField low = f;
  SpectralField high = f;
  for (int c = 0; c < f.components(); ++c) {
    auto lo = low.component(c);
    auto hi = high.component(c);
    for (std::size_t m = 0; m < lo.size(); ++m) {
      lo[m] *= low_mult[m];
      hi[m] *= high_mult[m];
    }
  }
  return {std::move(low), std::move(high)};
}

double chemin_lerner_from_band_norms(std::span<const double> times,
                                     std::span<const std::vector<double>> norms, double q, double s,
                                     double r, int j_min) {
  check_exponent(q, "q");
  if (times.size() != norms.size()) throw std::invalid_argument("chemin_lerner: times/fields size mismatch");
  if (times.empty()) throw std::invalid_argument("chemin_lerner: empty series");
  const bool sup = std::isinf(q);
  if (!sup && times.size() < 2) throw std::invalid_argument("chemin_lerner: need at least 2 snapshots for q < ∞");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) throw std::invalid_argument("chemin_lerner: snapshot times must be nondecreasing");
  }
  const std::size_t nb = norms.front().size();
  std::vector<double> per_band(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    if (sup) {
      double m = 0.0;
      for (const auto& row : norms) m = std::max(m, row[b]);
      per_band[b] = m;
    } else {
      double acc = 0.0;
      for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        const double lhs = q == 1.0 ? norms[i - 1][b] : std::pow(norms[i - 1][b], q);
        const double rhs = q == 1.0 ? norms[i][b] : std::pow(norms[i][b], q);
        acc += 0.5 * dt * (lhs + rhs);
      }
      per_band[b] = q == 1.0 ? acc : std::pow(acc, 1.0 / q);
    }
  }
  return weighted_band_sum(per_band, s, r, j_min);
}

double chemin_lerner_norm(const TimeSeries& series, double q, const BesovIndex& idx,
                          const DyadicBands& bands) {
  if (series.times.size() != series.fields.size()) {
    throw std::invalid_argument("chemin_lerner: times/fields size mismatch");
  }
  std::vector<std::vector<double>> norms;
  norms.reserve(series.fields.size());
  for (const auto& f : series.fields) norms.push_back(band_norms(f, idx.p, bands));
  return chemin_lerner_from_band_norms(series.times, norms, q, idx.s, idx.r, bands.j_min());
}

}  // namespace bcns
