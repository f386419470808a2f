#include "mhd/fft.hpp"

#include <fftw3.h>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <map>
#include <memory>

namespace mhd {
namespace {

#if defined(__GLIBC__)
// Grid-sized temporaries would otherwise be served by mmap and returned to the
// kernel on every free, which costs a page fault per touched page.
[[maybe_unused]] const bool kAllocatorTuned = [] {
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  return true;
}();
#endif

struct Plans {
  int N = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plans(int n) : N(n) {
    const int nc = n / 2 + 1;
    real = fftw_alloc_real(std::size_t(n) * n);
    cplx = fftw_alloc_complex(std::size_t(n) * nc);
    // FFTW_ESTIMATE keeps plan selection independent of timing, so repeated
    // runs produce bit-identical transforms.
    fwd = fftw_plan_dft_r2c_2d(n, n, real, cplx, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_2d(n, n, cplx, real, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Plans& plans_for(int N) {
  static std::map<int, std::unique_ptr<Plans>> cache;
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, std::make_unique<Plans>(N)).first;
  return *it->second;
}

}  // namespace

Spectrum forward(const Field& f) {
  const int N = int(f.rows());
  Plans& p = plans_for(N);
  std::copy(f.data(), f.data() + std::size_t(N) * N, p.real);
  fftw_execute(p.fwd);
  Spectrum s(N, N / 2 + 1);
  const double norm = 1.0 / (double(N) * N);
  auto* out = s.data();
  for (std::size_t n = 0; n < std::size_t(N) * (N / 2 + 1); ++n)
    out[n] = std::complex<double>(p.cplx[n][0] * norm, p.cplx[n][1] * norm);
  return s;
}

void inverse_into(const Spectrum& s, Field& out) {
  const int N = int(s.rows());
  Plans& p = plans_for(N);
  const auto* in = s.data();
  for (std::size_t n = 0; n < std::size_t(N) * (N / 2 + 1); ++n) {
    p.cplx[n][0] = in[n].real();
    p.cplx[n][1] = in[n].imag();
  }
  fftw_execute(p.bwd);
  out.resize(N, N);
  std::copy(p.real, p.real + std::size_t(N) * N, out.data());
}

Field inverse(const Spectrum& s) {
  Field f;
  inverse_into(s, f);
  return f;
}

}  // namespace mhd
