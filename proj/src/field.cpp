#include "bnslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "bnslab/errors.hpp"

namespace bnslab {

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid) {
  for (auto& c : c_) c.assign(grid.spectral_size(), cplx{});
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  axpy(1.0, o);
  divergence_free_ = divergence_free_ && o.divergence_free_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  axpy(-1.0, o);
  divergence_free_ = divergence_free_ && o.divergence_free_;
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : c_)
    for (auto& z : c) z *= a;
  return *this;
}

void SpectralField::axpy(double a, const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "field arithmetic");
  for (int d = 0; d < 3; ++d) {
    auto& x = c_[d];
    const auto& y = o.c_[d];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * y[i];
  }
}

void SpectralField::set_zero() {
  for (auto& c : c_) std::fill(c.begin(), c.end(), cplx{});
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

void for_each_mode(const GridSpec& g, const std::function<void(const Mode&)>& fn) {
  const int n = g.n, nz = g.nz();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < nz; ++l, ++idx)
        fn(Mode{idx, signed_index(i, n), signed_index(j, n), l, l == 0 ? 1.0 : 2.0});
}

const std::vector<double>& mode_k2(const GridSpec& g) {
  static std::mutex mu;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(g.n);
  if (it != cache.end()) return it->second;
  std::vector<double> k2(g.spectral_size());
  for_each_mode(g, [&](const Mode& m) { k2[m.index] = m.k2(); });
  return cache.emplace(g.n, std::move(k2)).first->second;
}

std::size_t mode_index(const GridSpec& g, int kx, int ky, int kz) {
  const int n = g.n;
  auto wrap = [n](int k) { return k < 0 ? k + n : k; };
  return (static_cast<std::size_t>(wrap(kx)) * n + wrap(ky)) * g.nz() + kz;
}

bool is_nyquist(const GridSpec& g, int kx, int ky, int kz) {
  const int h = g.n / 2;
  return std::abs(kx) >= h || std::abs(ky) >= h || std::abs(kz) >= h;
}

cplx coefficient(const SpectralField& u, int a, int kx, int ky, int kz) {
  const auto& g = u.grid();
  if (is_nyquist(g, kx, ky, kz)) return {};
  if (kz < 0) return std::conj(u.component(a)[mode_index(g, -kx, -ky, -kz)]);
  return u.component(a)[mode_index(g, kx, ky, kz)];
}

void set_coefficient(SpectralField& u, int a, int kx, int ky, int kz, cplx value) {
  const auto& g = u.grid();
  if (is_nyquist(g, kx, ky, kz)) throw ArgumentError("wavevector outside the resolved grid");
  if (kz < 0) {
    kx = -kx, ky = -ky, kz = -kz;
    value = std::conj(value);
  }
  u.component(a)[mode_index(g, kx, ky, kz)] = value;
  if (kz == 0) {
    if (kx == 0 && ky == 0)
      u.component(a)[0] = {value.real(), 0.0};
    else
      u.component(a)[mode_index(g, -kx, -ky, 0)] = std::conj(value);
  }
}

double inner_product(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u.grid(), v.grid(), "inner product");
  const auto& g = u.grid();
  const int nz = g.nz();
  double s = 0.0;
  for (int d = 0; d < 3; ++d) {
    const auto& a = u.component(d);
    const auto& b = v.component(d);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double w = (i % nz) == 0 ? 1.0 : 2.0;
      s += w * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    }
  }
  const double vol = g.period * g.period * g.period;
  return s * vol;
}

double l2_norm(const SpectralField& u) { return std::sqrt(std::max(0.0, inner_product(u, u))); }

double max_abs_coefficient(const SpectralField& u) {
  double m = 0.0;
  for (int d = 0; d < 3; ++d)
    for (const auto& z : u.component(d)) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_difference(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u.grid(), v.grid(), "field comparison");
  double m = 0.0;
  for (int d = 0; d < 3; ++d) {
    const auto& a = u.component(d);
    const auto& b = v.component(d);
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double divergence_defect(const SpectralField& u) {
  double worst = 0.0;
  for_each_mode(u.grid(), [&](const Mode& m) {
    const cplx a = u.component(0)[m.index], b = u.component(1)[m.index],
               c = u.component(2)[m.index];
    const double amp = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
    if (amp < 1e-300 || m.k2() == 0.0) return;
    const double kk = std::sqrt(m.k2());
    const double div = std::abs(double(m.kx) * a + double(m.ky) * b + double(m.kz) * c) / kk;
    worst = std::max(worst, div / amp);
  });
  return worst;
}

double hermitian_defect(const SpectralField& u) {
  const auto& g = u.grid();
  const double scale = std::max(max_abs_coefficient(u), 1e-300);
  double worst = 0.0;
  for (int d = 0; d < 3; ++d) {
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const int kx = signed_index(i, g.n), ky = signed_index(j, g.n);
        const cplx a = u.component(d)[mode_index(g, kx, ky, 0)];
        if (is_nyquist(g, kx, ky, 0)) {
          worst = std::max(worst, std::abs(a) / scale);
          continue;
        }
        const cplx b = u.component(d)[mode_index(g, -kx, -ky, 0)];
        worst = std::max(worst, std::abs(b - std::conj(a)) / scale);
      }
  }
  return worst;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw ArgumentError(std::string(what) + ": mismatched grids");
}

}  // namespace bnslab
