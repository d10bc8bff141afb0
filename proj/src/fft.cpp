#include "bnslab/fft.hpp"

#include <fftw3.h>
#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <map>
#include <mutex>
#include <vector>

#include "bnslab/errors.hpp"

namespace bnslab::fft {
namespace {

#if defined(__GLIBC__)
// Field buffers are large and short-lived; keeping them on the heap instead of
// fresh mmaps avoids a page-fault storm on every transform.
const bool heap_tuned = [] {
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  return true;
}();
#endif

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Planning is not thread-safe in FFTW; execution with new arrays is.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding,
// identical from run to run.
const Plans& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, Plans> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
  const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  std::vector<double> r(real_size);
  std::vector<cplx> c(cplx_size);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p;
  p.forward = fftw_plan_dft_r2c_3d(n, n, n, r.data(), cp, flags);
  p.backward = fftw_plan_dft_c2r_3d(n, n, n, cp, r.data(), flags | FFTW_DESTROY_INPUT);
  if (!p.forward || !p.backward) throw NumericalError("FFT planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void to_physical(const GridSpec& g, std::span<const cplx> coeffs, std::span<double> values) {
  if (coeffs.size() != g.spectral_size() || values.size() != g.physical_size())
    throw ArgumentError("FFT buffer size mismatch");
  thread_local std::vector<cplx> scratch;
  scratch.assign(coeffs.begin(), coeffs.end());
  fftw_execute_dft_c2r(plans_for(g.n).backward, reinterpret_cast<fftw_complex*>(scratch.data()),
                       values.data());
}

void to_spectral(const GridSpec& g, std::span<const double> values, std::span<cplx> coeffs) {
  if (coeffs.size() != g.spectral_size() || values.size() != g.physical_size())
    throw ArgumentError("FFT buffer size mismatch");
  thread_local std::vector<double> scratch;
  scratch.assign(values.begin(), values.end());
  fftw_execute_dft_r2c(plans_for(g.n).forward, scratch.data(),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double inv = 1.0 / static_cast<double>(g.physical_size());
  for (auto& z : coeffs) z *= inv;
}

PhysicalField to_physical(const SpectralField& u) {
  PhysicalField f{u.grid(), {}};
  for (int a = 0; a < 3; ++a) {
    f.v[a].resize(u.grid().physical_size());
    to_physical(u.grid(), u.component(a), f.v[a]);
  }
  return f;
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField u(f.grid);
  for (int a = 0; a < 3; ++a) to_spectral(f.grid, f.v[a], u.component(a));
  const GridSpec& g = f.grid;
  for_each_mode(g, [&](const Mode& m) {
    if (is_nyquist(g, m.kx, m.ky, m.kz))
      for (int a = 0; a < 3; ++a) u.component(a)[m.index] = {};
  });
  return u;
}

}  // namespace bnslab::fft
