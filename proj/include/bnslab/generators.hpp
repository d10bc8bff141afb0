#pragma once

#include <array>
#include <cstdint>

#include "bnslab/field.hpp"

namespace bnslab {

// Divergence-free, mean-zero field with independent complex Gaussian
// coefficients on k_lo <= |k| <= k_hi (integer wavevector units), rescaled so
// its root-mean-square value equals `amplitude`.  Coefficients depend only on
// the seed and the band, not on the grid size, so the same call on a finer
// grid yields the same function.
SpectralField random_bandlimited(const GridSpec& g, double k_lo, double k_hi, double amplitude,
                                 std::uint64_t seed);

// amplitude * (sin a x cos a y cos a z, -cos a x sin a y cos a z, 0), a = k0 * unit.
SpectralField taylor_green_like(const GridSpec& g, int k0, double amplitude);

// Random divergence-free field on the single lattice sphere |xi| = 2^{j0+1},
// the only radius seen by block j0 alone; rms value `amplitude`.
SpectralField shell_bump(const GridSpec& g, int j0, double amplitude, std::uint64_t seed);

// One real Fourier pair at integer wavevector k with the given polarization
// (projected to be divergence-free).
SpectralField single_mode(const GridSpec& g, const std::array<int, 3>& k,
                          const std::array<double, 3>& polarization, double amplitude = 1.0);

// Single localized vortex: curl of amplitude * axis * exp(-|x - core|^2 / (2 width^2)),
// periodized and truncated to the dealiased band.  Shrinking the width by
// lambda changes the velocity by 1/lambda, the critical whole-space scaling.
SpectralField gaussian_vortex(const GridSpec& g, double width, const std::array<double, 3>& core,
                              const std::array<double, 3>& axis, double amplitude = 1.0);

// Rescales u to unit root-mean-square value times `amplitude`.
SpectralField with_rms(const SpectralField& u, double amplitude);

}  // namespace bnslab
