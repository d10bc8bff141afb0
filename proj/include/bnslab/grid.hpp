#pragma once

#include <cstddef>
#include <numbers>

namespace bnslab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Periodic cube of side `period` sampled with n points per direction.
// Wavevectors are xi = unit() * k with integer k.  The resolved dyadic range
// [j_min, j_max] is the largest one for which the low-pass S_{j_min} removes
// only the mean and S_{j_max+1} is the identity inside the Nyquist sphere.
struct GridSpec {
  int n = 32;
  double period = two_pi;
  int j_min = 0;
  int j_max = 0;

  static GridSpec make(int n, double period = two_pi);

  double unit() const { return two_pi / period; }
  double nyquist() const { return 0.5 * n * unit(); }
  double spacing() const { return period / n; }
  double cell_volume() const;
  int nz() const { return n / 2 + 1; }
  std::size_t spectral_size() const;
  std::size_t physical_size() const;
  int shell_count() const { return j_max - j_min + 1; }

  // Torus of period period / 2^m with the same sampling; shells shift by m.
  GridSpec rescaled(int m) const;

  // Same torus with n * 2^r points per direction.
  GridSpec refined(int r) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n && a.period == b.period;
  }
};

// Signed integer wavenumber for FFT index i on an n-point axis.
inline int signed_index(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace bnslab
