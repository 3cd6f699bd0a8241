#include "bcns/calculus.hpp"

#include <stdexcept>
#include <vector>

#include "bcns/operators.hpp"
#include "bcns/transform.hpp"

namespace bcns {
namespace {

enum class Part { gradient, solenoidal };

SpectralField project(const SpectralField& v, Part part, const char* what) {
  if (v.rank() != Rank::vector) throw std::invalid_argument(std::string(what) + ": expected a vector field");
  const Grid& g = v.grid();
  const int d = g.dim();
  SpectralField out = SpectralField::vector(g);
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (m == 0) {
      for (int c = 0; c < d; ++c) out.at(c, 0) = part == Part::solenoidal ? v.at(c, 0) : cplx{};
      continue;
    }
    const auto k = g.wavevector(m);
    cplx kv{};
    for (int c = 0; c < d; ++c) kv += static_cast<double>(k[c]) * v.at(c, m);
    const cplx coef = kv / g.k_squared(m);
    for (int c = 0; c < d; ++c) {
      const cplx grad = static_cast<double>(k[c]) * coef;
      out.at(c, m) = part == Part::gradient ? grad : v.at(c, m) - grad;
    }
  }
  return out;
}

void require_scalar_pair(const SpectralField& u, const SpectralField& v, const DyadicBands& bands,
                         const char* what) {
  require_same_grid(u, v, what);
  if (u.grid() != bands.grid()) throw std::invalid_argument(std::string(what) + ": grid mismatch with bands");
  if (u.rank() != Rank::scalar || v.rank() != Rank::scalar) {
    throw std::invalid_argument(std::string(what) + ": expected scalar fields");
  }
}

RealField band_physical(const SpectralField& f, int j, const DyadicBands& bands) {
  return inverse_transform(dyadic_block(f, j, bands));
}

}  // namespace

SpectralField leray_project(const SpectralField& v) { return project(v, Part::solenoidal, "leray_project"); }

SpectralField compressible_project(const SpectralField& v) {
  return project(v, Part::gradient, "compressible_project");
}

SpectralField paraproduct(const SpectralField& u, const SpectralField& v, const DyadicBands& bands) {
  require_scalar_pair(u, v, bands, "paraproduct");
  const SpectralField ud = remove_mean(dealias(u));
  const SpectralField vd = dealias(v);
  const Grid& g = u.grid();
  RealField acc(g, Rank::scalar);
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    const RealField low = inverse_transform(low_cutoff(ud, j - 1, bands));
    const RealField blk = band_physical(vd, j, bands);
    for (std::size_t m = 0; m < g.size(); ++m) acc.values[m] += low.values[m] * blk.values[m];
  }
  return dealias(forward_transform(acc));
}

SpectralField remainder(const SpectralField& u, const SpectralField& v, const DyadicBands& bands) {
  require_scalar_pair(u, v, bands, "remainder");
  const SpectralField ud = dealias(u);
  const SpectralField vd = dealias(v);
  const Grid& g = u.grid();
  std::vector<RealField> ub, vb;
  for (int j = bands.j_min(); j <= bands.j_max(); ++j) {
    ub.push_back(band_physical(ud, j, bands));
    vb.push_back(band_physical(vd, j, bands));
  }
  // Σ_j u_j v_j + Σ_j (u_j v_{j+1} + u_{j+1} v_j): each pointwise term is
  // invariant under swapping u and v, so R(u,v) == R(v,u) bit for bit.
  RealField acc(g, Rank::scalar);
  for (std::size_t b = 0; b < ub.size(); ++b) {
    const auto& uj = ub[b].values;
    const auto& vj = vb[b].values;
    for (std::size_t m = 0; m < g.size(); ++m) {
      double term = uj[m] * vj[m];
      if (b + 1 < ub.size()) {
        const auto& uk = ub[b + 1].values;
        const auto& vk = vb[b + 1].values;
        term += uj[m] * vk[m] + uk[m] * vj[m];
      }
      acc.values[m] += term;
    }
  }
  return dealias(forward_transform(acc));
}

SpectralField commutator_transport(const SpectralField& u, const SpectralField& v, int j,
                                   const DyadicBands& bands) {
  if (u.rank() != Rank::vector) throw std::invalid_argument("commutator_transport: u must be a vector field");
  require_same_grid(u, v, "commutator_transport");
  if (!bands.valid(j)) throw std::out_of_range("commutator_transport: band index out of range");
  return advect(u, dyadic_block(v, j, bands)) - dyadic_block(advect(u, v), j, bands);
}

}  // namespace bcns
