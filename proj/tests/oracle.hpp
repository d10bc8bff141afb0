// Independent reference computations for the tests.  Nothing here calls the
// library's transforms or multipliers.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>

#include "bnslab/field.hpp"
#include "bnslab/grid.hpp"

namespace oracle {

// Smooth step: 1 on [0,1], 0 on [2,inf), logistic form of the exp(-1/t) blend.
inline double cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return 1.0 / (1.0 + std::exp(1.0 / (2.0 - r) - 1.0 / (r - 1.0)));
}

inline double block_profile(double r) { return cutoff(r / 2.0) - cutoff(r); }

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Initial decay rate of ||Delta_j e^{t Delta} u||_2 in units of 4^j t for an
// isotropic spectrum flat in |xi|^2 d|xi|: the block's energy-weighted mean of r^2.
inline double block_energy_centroid() {
  auto w2 = [](double r) { return block_profile(r) * block_profile(r); };
  const double num = simpson([&](double r) { return w2(r) * std::pow(r, 4); }, 1.0, 4.0);
  const double den = simpson([&](double r) { return w2(r) * r * r; }, 1.0, 4.0);
  return num / den;
}

// Direct evaluation of u_a(x) = sum_k c_k e^{i xi.x} over the full cube.
inline double point_value(const bnslab::SpectralField& u, int a, const std::array<double, 3>& x) {
  const auto& g = u.grid();
  const int h = g.n / 2;
  const double unit = 2.0 * std::numbers::pi / g.period;
  std::complex<double> s{};
  for (int kx = -h + 1; kx < h; ++kx)
    for (int ky = -h + 1; ky < h; ++ky)
      for (int kz = -h + 1; kz < h; ++kz) {
        const double phase = unit * (kx * x[0] + ky * x[1] + kz * x[2]);
        s += bnslab::coefficient(u, a, kx, ky, kz) * std::polar(1.0, phase);
      }
  return s.real();
}

using Wave = std::array<int, 3>;
using Amplitude = std::array<std::complex<double>, 3>;

// Every nonzero coefficient over the full cube, keyed by integer wavevector.
inline std::map<Wave, Amplitude> spectrum(const bnslab::SpectralField& u) {
  const int h = u.grid().n / 2;
  std::map<Wave, Amplitude> out;
  for (int kx = -h + 1; kx < h; ++kx)
    for (int ky = -h + 1; ky < h; ++ky)
      for (int kz = -h + 1; kz < h; ++kz) {
        Amplitude c;
        bool nonzero = false;
        for (int a = 0; a < 3; ++a) {
          c[a] = bnslab::coefficient(u, a, kx, ky, kz);
          nonzero = nonzero || std::abs(c[a]) > 0.0;
        }
        if (nonzero) out[{kx, ky, kz}] = c;
      }
  return out;
}

// -P div(sym(u (x) v)) by explicit convolution of the two spectra; no
// dealiasing, so inputs must keep |p + q| well inside the retained band.
inline std::map<Wave, Amplitude> forcing_by_convolution(const bnslab::SpectralField& u,
                                                        const bnslab::SpectralField& v) {
  const double unit = 2.0 * std::numbers::pi / u.grid().period;
  const auto su = spectrum(u), sv = spectrum(v);
  std::map<Wave, std::array<std::array<std::complex<double>, 3>, 3>> tensor;
  for (const auto& [p, up] : su)
    for (const auto& [q, vq] : sv) {
      const Wave k{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
      auto& t = tensor[k];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t[a][b] += 0.5 * (up[a] * vq[b] + vq[a] * up[b]);
    }
  std::map<Wave, Amplitude> out;
  const std::complex<double> I{0.0, 1.0};
  for (const auto& [k, t] : tensor) {
    const double xi[3] = {unit * k[0], unit * k[1], unit * k[2]};
    const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (xi2 == 0.0) continue;
    Amplitude div{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) div[a] += I * xi[b] * t[a][b];
    std::complex<double> along{};
    for (int a = 0; a < 3; ++a) along += xi[a] * div[a];
    Amplitude f;
    for (int a = 0; a < 3; ++a) f[a] = -(div[a] - xi[a] * along / xi2);
    out[k] = f;
  }
  return out;
}

}  // namespace oracle
