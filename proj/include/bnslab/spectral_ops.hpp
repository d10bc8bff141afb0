#pragma once

#include <array>

#include "bnslab/field.hpp"

namespace bnslab {

// e^{tau Delta}: exact per-mode multiplier exp(-tau |xi|^2).
SpectralField heat_flow(const SpectralField& u, double tau);

// Leray projection u - xi (xi . u) / |xi|^2; the mean mode is left alone.
SpectralField leray_project(const SpectralField& u);
void leray_project_inplace(SpectralField& u);

// 2/3-rule: zero every mode with |k| > n/3.
void dealias(SpectralField& u);
bool dealias_keeps(const GridSpec& g, double k2);

// u(x - shift), exact phase modulation.
SpectralField translate(const SpectralField& u, const std::array<double, 3>& shift);

// a * u(x / a) with a = 2^m viewed on the torus of period a * L: the
// coefficient array is multiplied by `amplitude` and only the period changes,
// so dyadic blocks shift by -m exactly.
SpectralField change_scale(const SpectralField& u, int m, double amplitude);

// u(2^d x) on the same torus (2^{3d} periodic copies): mode k moves to 2^d k.
// Throws ArgumentError if any nonzero mode would leave the grid.
SpectralField dilate_on_grid(const SpectralField& u, int d);

// Same torus sampled on a grid with n * 2^r points (zero padding).
SpectralField refine(const SpectralField& u, int r);

// Mean mode of every component.
std::array<cplx, 3> mean_mode(const SpectralField& u);

}  // namespace bnslab
