#include "bnslab/spectral_ops.hpp"

#include <cmath>

#include "bnslab/errors.hpp"

namespace bnslab {

SpectralField heat_flow(const SpectralField& u, double tau) {
  if (!(tau >= 0.0)) throw ArgumentError("heat flow time must be nonnegative");
  const GridSpec& g = u.grid();
  const auto& k2 = mode_k2(g);
  const double c = tau * g.unit() * g.unit();
  SpectralField out = u;
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double m = std::exp(-c * k2[i]);
    for (int a = 0; a < 3; ++a) out.component(a)[i] *= m;
  }
  return out;
}

void leray_project_inplace(SpectralField& u) {
  for_each_mode(u.grid(), [&](const Mode& m) {
    const double k2 = m.k2();
    if (k2 == 0.0) return;
    cplx& a = u.component(0)[m.index];
    cplx& b = u.component(1)[m.index];
    cplx& c = u.component(2)[m.index];
    const cplx dot = (double(m.kx) * a + double(m.ky) * b + double(m.kz) * c) / k2;
    a -= double(m.kx) * dot;
    b -= double(m.ky) * dot;
    c -= double(m.kz) * dot;
  });
  u.set_divergence_free(true);
}

SpectralField leray_project(const SpectralField& u) {
  SpectralField out = u;
  leray_project_inplace(out);
  return out;
}

bool dealias_keeps(const GridSpec& g, double k2) {
  const double kc = g.n / 3.0;
  return k2 <= kc * kc;
}

void dealias(SpectralField& u) {
  const GridSpec& g = u.grid();
  const auto& k2 = mode_k2(g);
  for (std::size_t i = 0; i < k2.size(); ++i)
    if (!dealias_keeps(g, k2[i]))
      for (int a = 0; a < 3; ++a) u.component(a)[i] = {};
}

SpectralField translate(const SpectralField& u, const std::array<double, 3>& shift) {
  SpectralField out = u;
  const double unit = u.grid().unit();
  for_each_mode(u.grid(), [&](const Mode& m) {
    const double phase = -unit * (m.kx * shift[0] + m.ky * shift[1] + m.kz * shift[2]);
    const cplx w{std::cos(phase), std::sin(phase)};
    for (int a = 0; a < 3; ++a) out.component(a)[m.index] *= w;
  });
  return out;
}

SpectralField change_scale(const SpectralField& u, int m, double amplitude) {
  SpectralField out(u.grid().rescaled(-m));
  for (int a = 0; a < 3; ++a) {
    const auto& src = u.component(a);
    auto& dst = out.component(a);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = amplitude * src[i];
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

SpectralField dilate_on_grid(const SpectralField& u, int d) {
  if (d < 0) throw ArgumentError("on-grid dilation needs a nonnegative exponent");
  const GridSpec& g = u.grid();
  SpectralField out(g);
  const int f = 1 << d;
  for_each_mode(g, [&](const Mode& m) {
    bool nonzero = false;
    for (int a = 0; a < 3; ++a) nonzero = nonzero || u.component(a)[m.index] != cplx{};
    if (!nonzero) return;
    if (is_nyquist(g, f * m.kx, f * m.ky, f * m.kz))
      throw ArgumentError("dilated field leaves the resolved grid");
    const std::size_t t = mode_index(g, f * m.kx, f * m.ky, f * m.kz);
    for (int a = 0; a < 3; ++a) out.component(a)[t] = u.component(a)[m.index];
  });
  out.set_divergence_free(u.divergence_free());
  return out;
}

SpectralField refine(const SpectralField& u, int r) {
  const GridSpec& g = u.grid();
  SpectralField out(g.refined(r));
  for_each_mode(g, [&](const Mode& m) {
    if (is_nyquist(g, m.kx, m.ky, m.kz)) return;
    const std::size_t t = mode_index(out.grid(), m.kx, m.ky, m.kz);
    for (int a = 0; a < 3; ++a) out.component(a)[t] = u.component(a)[m.index];
  });
  out.set_divergence_free(u.divergence_free());
  return out;
}

std::array<cplx, 3> mean_mode(const SpectralField& u) {
  return {u.component(0)[0], u.component(1)[0], u.component(2)[0]};
}

}  // namespace bnslab
