#include "bcns/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bcns {

SpectralField::SpectralField(Grid grid, Rank rank)
    : grid_(std::move(grid)), rank_(rank), coeffs_(grid_.size() * components(), cplx{}) {}

std::span<cplx> SpectralField::component(int c) {
  return std::span<cplx>(coeffs_).subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
}

std::span<const cplx> SpectralField::component(int c) const {
  return std::span<const cplx>(coeffs_).subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
}

SpectralField SpectralField::extract(int c) const {
  if (c < 0 || c >= components()) throw std::out_of_range("component index out of range");
  SpectralField out = scalar(grid_);
  std::ranges::copy(component(c), out.component(0).begin());
  return out;
}

SpectralField SpectralField::assemble(std::span<const SpectralField> parts) {
  if (parts.empty()) throw std::invalid_argument("assemble: no components");
  const Grid& g = parts.front().grid();
  if (static_cast<int>(parts.size()) != g.dim()) {
    throw std::invalid_argument("assemble: need one component per dimension");
  }
  SpectralField out = vector(g);
  for (int c = 0; c < g.dim(); ++c) {
    const auto& p = parts[static_cast<std::size_t>(c)];
    if (p.grid() != g || p.rank() != Rank::scalar) {
      throw std::invalid_argument("assemble: components must be scalars on one grid");
    }
    std::ranges::copy(p.component(0), out.component(c).begin());
  }
  return out;
}

double SpectralField::l2() const {
  double s = 0.0;
  for (const auto& z : coeffs_) s += std::norm(z);
  return std::sqrt(s);
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int c = 0; c < components(); ++c) {
    auto comp = component(c);
    for (std::size_t m = 0; m < grid_.size(); ++m) {
      worst = std::max(worst, std::abs(comp[grid_.conjugate_index(m)] - std::conj(comp[m])));
    }
  }
  return worst;
}

void SpectralField::symmetrize() {
  for (int c = 0; c < components(); ++c) {
    auto comp = component(c);
    std::vector<cplx> src(comp.begin(), comp.end());
    for (std::size_t m = 0; m < grid_.size(); ++m) {
      comp[m] = 0.5 * (src[m] + std::conj(src[grid_.conjugate_index(m)]));
    }
  }
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what) {
  if (a.grid() != b.grid()) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

namespace {
void require_same_shape(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b, "field arithmetic");
  if (a.rank() != b.rank()) throw std::invalid_argument("field arithmetic: rank mismatch");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& z : coeffs_) z *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, double s) { return a *= s; }
SpectralField operator-(SpectralField a) { return a *= -1.0; }

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

RealField::RealField(Grid g, Rank r) : grid(std::move(g)), rank(r), values(grid.size() * components(), 0.0) {}

std::span<double> RealField::component(int c) {
  return std::span<double>(values).subspan(static_cast<std::size_t>(c) * grid.size(), grid.size());
}

std::span<const double> RealField::component(int c) const {
  return std::span<const double>(values).subspan(static_cast<std::size_t>(c) * grid.size(), grid.size());
}

double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const std::size_t n = f.grid.size();
  const int nc = f.components();
  auto magnitude = [&](std::size_t m) {
    if (nc == 1) return std::abs(f.values[m]);
    double s = 0.0;
    for (int c = 0; c < nc; ++c) {
      const double x = f.values[static_cast<std::size_t>(c) * n + m];
      s += x * x;
    }
    return std::sqrt(s);
  };
  if (std::isinf(p)) {
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) worst = std::max(worst, magnitude(m));
    return worst;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (std::size_t m = 0; m < n; ++m) {
      const double v = magnitude(m);
      acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(n));
  }
  for (std::size_t m = 0; m < n; ++m) acc += std::pow(magnitude(m), p);
  return std::pow(acc / static_cast<double>(n), 1.0 / p);
}

double max_abs(const RealField& f) {
  double worst = 0.0;
  for (double v : f.values) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace bcns
