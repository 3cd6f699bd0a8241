#include "bcns/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bcns {

Grid::Grid(int dim, int modes) : dim_(dim), n_(modes) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (modes < 8 || modes % 2 != 0) {
    throw std::invalid_argument("mode count must be even and >= 8, got " + std::to_string(modes));
  }
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(modes);

  auto k = std::make_shared<std::vector<int>>(size_ * 3, 0);
  auto k2 = std::make_shared<std::vector<double>>(size_, 0.0);
  auto keep = std::make_shared<std::vector<unsigned char>>(size_, 1);
  for (std::size_t m = 0; m < size_; ++m) {
    std::size_t rest = m;
    long sq = 0;
    bool inside = true;
    for (int a = dim - 1; a >= 0; --a) {
      const int i = static_cast<int>(rest % static_cast<std::size_t>(modes));
      rest /= static_cast<std::size_t>(modes);
      const int kk = i < modes / 2 ? i : i - modes;
      (*k)[m * 3 + a] = kk;
      sq += static_cast<long>(kk) * kk;
      if (3 * std::abs(kk) >= modes) inside = false;
    }
    (*k2)[m] = static_cast<double>(sq);
    (*keep)[m] = inside ? 1 : 0;
  }
  k_ = std::move(k);
  k2_ = std::move(k2);
  keep_ = std::move(keep);
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

std::array<int, 3> Grid::wavevector(std::size_t m) const {
  return {(*k_)[m * 3], (*k_)[m * 3 + 1], (*k_)[m * 3 + 2]};
}

double Grid::k_norm(std::size_t m) const { return std::sqrt((*k2_)[m]); }

std::size_t Grid::index_of(std::array<int, 3> k) const {
  std::size_t m = 0;
  for (int a = 0; a < dim_; ++a) {
    const int i = ((k[a] % n_) + n_) % n_;
    m = m * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return m;
}

std::size_t Grid::conjugate_index(std::size_t m) const {
  auto k = wavevector(m);
  for (auto& c : k) c = -c;
  return index_of(k);
}

Grid make_grid(int dim, int modes) { return Grid(dim, modes); }

}  // namespace bcns
