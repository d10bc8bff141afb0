#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "bnslab/grid.hpp"

namespace bnslab {

using cplx = std::complex<double>;

// Real 3-vector field stored as the non-redundant half of its Fourier
// coefficients: index (i, j, l) with i, j in [0, n) and l in [0, n/2].
// Coefficients are normalized so that u(x) = sum_k c_k exp(i xi_k . x).
// The Nyquist planes are kept at zero so that every stored mode has a
// well-defined conjugate partner.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::vector<cplx>& component(int a) { return c_[a]; }
  const std::vector<cplx>& component(int a) const { return c_[a]; }

  bool divergence_free() const { return divergence_free_; }
  void set_divergence_free(bool flag) { divergence_free_ = flag; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  // this += a * o
  void axpy(double a, const SpectralField& o);
  void set_zero();

 private:
  GridSpec grid_;
  std::array<std::vector<cplx>, 3> c_;
  bool divergence_free_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// Physical-space samples of a 3-vector field, row-major (x, y, z).
struct PhysicalField {
  GridSpec grid;
  std::array<std::vector<double>, 3> v;
};

struct Mode {
  std::size_t index;
  int kx, ky, kz;
  // 1 on the kz = 0 plane, 2 elsewhere: multiplicity in Parseval sums.
  double weight;
  double k2() const { return double(kx) * kx + double(ky) * ky + double(kz) * kz; }
};

// Visits every stored mode in storage order.
void for_each_mode(const GridSpec& g, const std::function<void(const Mode&)>& fn);

// |k|^2 in integer units for every stored index, cached per grid size.
const std::vector<double>& mode_k2(const GridSpec& g);

std::size_t mode_index(const GridSpec& g, int kx, int ky, int kz);
bool is_nyquist(const GridSpec& g, int kx, int ky, int kz);

// Stored coefficient of an arbitrary wavevector (conjugates when kz < 0).
cplx coefficient(const SpectralField& u, int a, int kx, int ky, int kz);
// Sets c(k) and keeps c(-k) = conj(c(k)) on the kz = 0 plane.
void set_coefficient(SpectralField& u, int a, int kx, int ky, int kz, cplx value);

// L2 inner product over the torus (Parseval), and the induced norm.
double inner_product(const SpectralField& u, const SpectralField& v);
double l2_norm(const SpectralField& u);
// Largest coefficient modulus; the distance used for coefficient comparisons.
double max_abs_coefficient(const SpectralField& u);
double max_abs_difference(const SpectralField& u, const SpectralField& v);

// Max over modes of |xi . u(xi)| / |u(xi)|, ignoring modes below 1e-300.
double divergence_defect(const SpectralField& u);
// Max over kz = 0 plane pairs of |c(-k) - conj(c(k))|, relative to the field.
double hermitian_defect(const SpectralField& u);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace bnslab
