#include "bcns/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace bcns {
namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

// Plans are created once per (d, N, sign) with FFTW_ESTIMATE, which picks
// the same algorithm on every run. Execution always goes through freshly
// fftw_malloc'd buffers so the alignment matches the planning buffers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Grid& grid, int sign) {
    const auto key = std::make_tuple(grid.dim(), grid.n(), sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto in = allocate(grid.size());
    auto out = allocate(grid.size());
    int dims[3] = {grid.n(), grid.n(), grid.n()};
    fftw_plan plan = fftw_plan_dft(grid.dim(), dims, in.get(), out.get(), sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

}  // namespace

SpectralField forward_transform(const RealField& samples) {
  const Grid& grid = samples.grid;
  if (samples.values.size() != grid.size() * static_cast<std::size_t>(samples.components())) {
    throw std::invalid_argument("forward_transform: sample array does not match grid shape");
  }
  fftw_plan plan = PlanCache::instance().get(grid, FFTW_FORWARD);
  SpectralField out(grid, samples.rank);
  const std::size_t n = grid.size();
  const double scale = 1.0 / static_cast<double>(n);
  auto in = allocate(n);
  auto res = allocate(n);
  for (int c = 0; c < samples.components(); ++c) {
    auto src = samples.component(c);
    for (std::size_t m = 0; m < n; ++m) {
      in[m][0] = src[m];
      in[m][1] = 0.0;
    }
    fftw_execute_dft(plan, in.get(), res.get());
    auto dst = out.component(c);
    for (std::size_t m = 0; m < n; ++m) dst[m] = cplx(res[m][0] * scale, res[m][1] * scale);
    // Real input: the zero mode is real up to rounding; pin it.
    dst[0] = cplx(dst[0].real(), 0.0);
  }
  return out;
}

RealField inverse_transform(const SpectralField& f) {
  const Grid& grid = f.grid();
  fftw_plan plan = PlanCache::instance().get(grid, FFTW_BACKWARD);
  RealField out(grid, f.rank());
  const std::size_t n = grid.size();
  auto in = allocate(n);
  auto res = allocate(n);
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    for (std::size_t m = 0; m < n; ++m) {
      in[m][0] = src[m].real();
      in[m][1] = src[m].imag();
    }
    fftw_execute_dft(plan, in.get(), res.get());
    auto dst = out.component(c);
    for (std::size_t m = 0; m < n; ++m) dst[m] = res[m][0];
  }
  return out;
}

}  // namespace bcns
