#include "bnslab/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

bool upper_half(int kx, int ky, int kz) {
  return kz > 0 || (kz == 0 && (ky > 0 || (ky == 0 && kx > 0)));
}

}  // namespace

SpectralField with_rms(const SpectralField& u, double amplitude) {
  const double vol = std::pow(u.grid().period, 3);
  const double rms = l2_norm(u) / std::sqrt(vol);
  SpectralField out = u;
  if (rms > 0.0) out *= amplitude / rms;
  return out;
}

SpectralField random_bandlimited(const GridSpec& g, double k_lo, double k_hi, double amplitude,
                                 std::uint64_t seed) {
  if (!(k_lo >= 0.0) || !(k_hi >= k_lo)) throw ArgumentError("invalid wavenumber band");
  const int kmax = static_cast<int>(std::floor(k_hi));
  if (kmax >= g.n / 2) throw ArgumentError("band exceeds the grid resolution");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(g);
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky)
      for (int kz = -kmax; kz <= kmax; ++kz) {
        if (!upper_half(kx, ky, kz)) continue;
        const double k = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        if (k < k_lo || k > k_hi) continue;
        for (int a = 0; a < 3; ++a) {
          const double re = normal(rng), im = normal(rng);
          set_coefficient(u, a, kx, ky, kz, {re, im});
        }
      }
  leray_project_inplace(u);
  return with_rms(u, amplitude);
}

SpectralField taylor_green_like(const GridSpec& g, int k0, double amplitude) {
  if (k0 < 1 || 3 * k0 > g.n) throw ArgumentError("Taylor-Green wavenumber out of range");
  PhysicalField f{g, {}};
  const int n = g.n;
  for (auto& c : f.v) c.assign(g.physical_size(), 0.0);
  const double a = k0 * g.unit(), h = g.spacing();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++idx) {
        const double x = a * i * h, y = a * j * h, z = a * l * h;
        f.v[0][idx] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        f.v[1][idx] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
  SpectralField u = fft::to_spectral(f);
  leray_project_inplace(u);
  return u;
}

SpectralField shell_bump(const GridSpec& g, int j0, double amplitude, std::uint64_t seed) {
  if (j0 < g.j_min || j0 > g.j_max) throw ArgumentError("shell outside the resolved range");
  const double r = std::ldexp(1.0, j0 + 1) / g.unit();
  const double r2 = r * r;
  const long target = std::lround(r2);
  if (std::abs(r2 - double(target)) > 1e-9 || r >= g.n / 2)
    throw ArgumentError("no lattice sphere for the requested shell on this grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField u(g);
  const int kmax = static_cast<int>(std::floor(r));
  bool any = false;
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky)
      for (int kz = -kmax; kz <= kmax; ++kz) {
        if (!upper_half(kx, ky, kz)) continue;
        if (long(kx) * kx + long(ky) * ky + long(kz) * kz != target) continue;
        for (int a = 0; a < 3; ++a) set_coefficient(u, a, kx, ky, kz, {normal(rng), normal(rng)});
        any = true;
      }
  if (!any) throw ArgumentError("no lattice points on the requested shell sphere");
  leray_project_inplace(u);
  return with_rms(u, amplitude);
}

SpectralField single_mode(const GridSpec& g, const std::array<int, 3>& k,
                          const std::array<double, 3>& polarization, double amplitude) {
  SpectralField u(g);
  for (int a = 0; a < 3; ++a)
    set_coefficient(u, a, k[0], k[1], k[2], 0.5 * amplitude * polarization[a]);
  leray_project_inplace(u);
  return u;
}

SpectralField gaussian_vortex(const GridSpec& g, double width, const std::array<double, 3>& core,
                              const std::array<double, 3>& axis, double amplitude) {
  if (!(width > 0.0)) throw ArgumentError("vortex width must be positive");
  SpectralField u(g);
  const double unit = g.unit();
  // Fourier coefficient of the periodized Gaussian potential.
  const double pref = amplitude * std::pow(2.0 * std::numbers::pi, 1.5) * width * width * width /
                      (g.period * g.period * g.period);
  for_each_mode(g, [&](const Mode& m) {
    if (is_nyquist(g, m.kx, m.ky, m.kz) || !dealias_keeps(g, m.k2())) return;
    const double xi[3] = {unit * m.kx, unit * m.ky, unit * m.kz};
    const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const cplx pot = pref * std::exp(-0.5 * width * width * xi2) *
                     std::polar(1.0, -(xi[0] * core[0] + xi[1] * core[1] + xi[2] * core[2]));
    const cplx i_pot = cplx{0.0, 1.0} * pot;
    u.component(0)[m.index] = i_pot * (xi[1] * axis[2] - xi[2] * axis[1]);
    u.component(1)[m.index] = i_pot * (xi[2] * axis[0] - xi[0] * axis[2]);
    u.component(2)[m.index] = i_pot * (xi[0] * axis[1] - xi[1] * axis[0]);
  });
  u.set_divergence_free(true);
  return u;
}

}  // namespace bnslab
