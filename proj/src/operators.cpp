#include "bcns/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "bcns/transform.hpp"

namespace bcns {
namespace {

void require_rank(const SpectralField& f, Rank r, const char* what) {
  if (f.rank() != r) {
    throw std::invalid_argument(std::string(what) +
                                (r == Rank::scalar ? ": expected a scalar field" : ": expected a vector field"));
  }
}

}  // namespace

SpectralField derivative(const SpectralField& f, int axis, int order) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("derivative: axis out of range");
  if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const int k = g.wavenumber(m, axis);
      if (order == 1) {
        comp[m] = (2 * k == -g.n()) ? cplx{} : comp[m] * cplx(0.0, static_cast<double>(k));
      } else {
        comp[m] *= -static_cast<double>(k) * k;
      }
    }
  }
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  require_rank(scalar, Rank::scalar, "gradient");
  const Grid& g = scalar.grid();
  SpectralField out = SpectralField::vector(g);
  for (int a = 0; a < g.dim(); ++a) {
    auto d = derivative(scalar, a, 1);
    std::ranges::copy(d.component(0), out.component(a).begin());
  }
  return out;
}

SpectralField divergence(const SpectralField& vec) {
  require_rank(vec, Rank::vector, "divergence");
  const Grid& g = vec.grid();
  SpectralField out = SpectralField::scalar(g);
  for (int a = 0; a < g.dim(); ++a) out += derivative(vec.extract(a), a, 1);
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t m = 0; m < g.size(); ++m) comp[m] *= -g.k_squared(m);
  }
  return out;
}

SpectralField curl(const SpectralField& vec) {
  require_rank(vec, Rank::vector, "curl");
  const Grid& g = vec.grid();
  if (g.dim() == 2) {
    return derivative(vec.extract(1), 0, 1) - derivative(vec.extract(0), 1, 1);
  }
  const auto v0 = vec.extract(0);
  const auto v1 = vec.extract(1);
  const auto v2 = vec.extract(2);
  const SpectralField parts[3] = {derivative(v2, 1, 1) - derivative(v1, 2, 1),
                                  derivative(v0, 2, 1) - derivative(v2, 0, 1),
                                  derivative(v1, 0, 1) - derivative(v0, 1, 1)};
  return SpectralField::assemble(parts);
}

SpectralField inv_laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  const double scale = f.l2();
  for (int c = 0; c < f.components(); ++c) {
    if (std::abs(f.at(c, 0)) > 1e-12 * scale) {
      throw std::domain_error("inv_laplacian: input has nonzero mean; (-Δ)^{-1} is not defined");
    }
  }
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    comp[0] = cplx{};
    for (std::size_t m = 1; m < g.size(); ++m) comp[m] /= g.k_squared(m);
  }
  return out;
}

SpectralField dealias(SpectralField f) {
  const Grid& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t m = 0; m < g.size(); ++m) {
      if (!g.inside_dealias(m)) comp[m] = cplx{};
    }
  }
  return f;
}

SpectralField product_dealiased(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "product_dealiased");
  require_rank(f, Rank::scalar, "product_dealiased");
  require_rank(g, Rank::scalar, "product_dealiased");
  const RealField x = inverse_transform(dealias(f));
  RealField y = inverse_transform(dealias(g));
  for (std::size_t m = 0; m < y.values.size(); ++m) y.values[m] *= x.values[m];
  return dealias(forward_transform(y));
}

SpectralField multiply(const SpectralField& scalar, const SpectralField& vec) {
  require_same_grid(scalar, vec, "multiply");
  require_rank(scalar, Rank::scalar, "multiply");
  require_rank(vec, Rank::vector, "multiply");
  const RealField x = inverse_transform(dealias(scalar));
  RealField y = inverse_transform(dealias(vec));
  const std::size_t n = vec.grid().size();
  for (int c = 0; c < vec.components(); ++c) {
    auto comp = y.component(c);
    for (std::size_t m = 0; m < n; ++m) comp[m] *= x.values[m];
  }
  return dealias(forward_transform(y));
}

SpectralField dot(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u, v, "dot");
  require_rank(u, Rank::vector, "dot");
  require_rank(v, Rank::vector, "dot");
  const RealField x = inverse_transform(dealias(u));
  const RealField y = inverse_transform(dealias(v));
  RealField out(u.grid(), Rank::scalar);
  const std::size_t n = u.grid().size();
  for (int c = 0; c < u.components(); ++c) {
    auto a = x.component(c);
    auto b = y.component(c);
    for (std::size_t m = 0; m < n; ++m) out.values[m] += a[m] * b[m];
  }
  return dealias(forward_transform(out));
}

SpectralField advect(const SpectralField& u, const SpectralField& w) {
  require_same_grid(u, w, "advect");
  require_rank(u, Rank::vector, "advect");
  const Grid& g = u.grid();
  const RealField uu = inverse_transform(dealias(u));
  const std::size_t n = g.size();
  RealField out(g, w.rank());
  for (int c = 0; c < w.components(); ++c) {
    const auto wc = dealias(w.extract(c));
    auto dst = out.component(c);
    for (int a = 0; a < g.dim(); ++a) {
      const RealField dw = inverse_transform(derivative(wc, a, 1));
      auto ua = uu.component(a);
      for (std::size_t m = 0; m < n; ++m) dst[m] += ua[m] * dw.values[m];
    }
  }
  return dealias(forward_transform(out));
}

SpectralField constant_field(const Grid& grid, double value) {
  SpectralField out = SpectralField::scalar(grid);
  out.at(0, 0) = cplx(value, 0.0);
  return out;
}

SpectralField remove_mean(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) f.at(c, 0) = cplx{};
  return f;
}

}  // namespace bcns
