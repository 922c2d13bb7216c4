#include "lcflow/spectral.hpp"

#include <fftw3.h>
#include <malloc.h>
#include <omp.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "lcflow/errors.hpp"

namespace lcflow {
namespace detail {

void* fft_alloc(std::size_t bytes) { return fftw_malloc(bytes); }
void fft_free(void* p) noexcept { fftw_free(p); }

}  // namespace detail

namespace {

#ifdef __GLIBC__
// Field buffers are a few MB and are allocated and released at a high rate.
// Above glibc's default mmap threshold each one would be a fresh mapping that
// must be page-faulted in again, so keep them on the heap instead.
const bool kHeapTuned = [] {
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 512 << 20);
  return true;
}();
#endif

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  int real_alignment = 0;
  int complex_alignment = 0;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void set_threads(int t) {
    std::lock_guard lock(mu_);
    threads_ = std::max(1, t);
  }

  const Plans& get(int n) {
    std::lock_guard lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    if (!threads_initialized_) {
      fftw_init_threads();
      threads_initialized_ = true;
    }
    fftw_plan_with_nthreads(threads_ > 0 ? threads_ : omp_get_max_threads());

    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(cplx_size);
    // FFTW_ESTIMATE keeps plan selection (and thus rounding) independent of timing.
    Plans p;
    p.r2c = fftw_plan_dft_r2c_3d(n, n, n, r, c, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_3d(n, n, n, c, r, FFTW_ESTIMATE);
    p.real_alignment = fftw_alignment_of(r);
    p.complex_alignment = fftw_alignment_of(reinterpret_cast<double*>(c));
    fftw_free(r);
    fftw_free(c);
    if (p.r2c == nullptr || p.c2r == nullptr) {
      throw NumericalError("FFTW planning failed for n=" + std::to_string(n));
    }
    return plans_.emplace(n, p).first->second;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  std::mutex mu_;
  std::map<int, Plans> plans_;
  int threads_ = 0;
  bool threads_initialized_ = false;
};

void check_alignment(const double* p, int expected) {
  if (fftw_alignment_of(const_cast<double*>(p)) != expected) {
    throw NumericalError("field buffer alignment does not match FFT plan");
  }
}

}  // namespace

void set_fft_threads(int threads) { PlanCache::instance().set_threads(threads); }

namespace detail {

void forward_component(const Grid& grid, std::span<const double> in,
                       std::span<std::complex<double>> out) {
  const Plans& p = PlanCache::instance().get(grid.n());
  check_alignment(in.data(), p.real_alignment);
  check_alignment(reinterpret_cast<const double*>(out.data()), p.complex_alignment);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : out) v *= scale;
}

void inverse_component(const Grid& grid, std::span<const std::complex<double>> in,
                       std::span<double> out) {
  const Plans& p = PlanCache::instance().get(grid.n());
  // c2r overwrites its input.
  thread_local AlignedVector<std::complex<double>> scratch;
  scratch.assign(in.begin(), in.end());
  check_alignment(reinterpret_cast<const double*>(scratch.data()), p.complex_alignment);
  check_alignment(out.data(), p.real_alignment);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace detail
}  // namespace lcflow
