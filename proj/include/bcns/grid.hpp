#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace bcns {

/// Periodic grid on the torus [0, 2π)^d with N modes per dimension.
///
/// Lattice ordering is row-major over FFT index order: a flat index
/// `m = ((i0 * N) + i1) * N + i2` (last axis fastest), where each index
/// `i` maps to the integer frequency `i < N/2 ? i : i - N`, so every
/// component lies in [-N/2, N/2). Physical sample `m` sits at
/// `x_axis = 2π i_axis / N` with the same ordering.
class Grid {
 public:
  Grid(int dim, int modes);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }
  double spacing() const;

  /// Integer frequency of flat index m along the given axis (0-based).
  int wavenumber(std::size_t m, int axis) const { return (*k_)[m * 3 + axis]; }
  std::array<int, 3> wavevector(std::size_t m) const;
  double k_squared(std::size_t m) const { return (*k2_)[m]; }
  double k_norm(std::size_t m) const;

  /// Flat index of the frequency -k (the Hermitian partner of m).
  std::size_t conjugate_index(std::size_t m) const;
  /// Flat index of an integer frequency (components reduced mod N).
  std::size_t index_of(std::array<int, 3> k) const;

  /// 2/3-rule mask: false when any |k_i| >= N/3.
  bool inside_dealias(std::size_t m) const { return (*keep_)[m] != 0; }

  bool operator==(const Grid& other) const { return dim_ == other.dim_ && n_ == other.n_; }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int dim_;
  int n_;
  std::size_t size_;
  std::shared_ptr<const std::vector<int>> k_;
  std::shared_ptr<const std::vector<double>> k2_;
  std::shared_ptr<const std::vector<unsigned char>> keep_;
};

/// Validates (d, N) and builds the grid. Throws std::invalid_argument for
/// d outside {2, 3}, odd N or N < 8.
Grid make_grid(int dim, int modes);

}  // namespace bcns
