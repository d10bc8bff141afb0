#pragma once

#include <span>

#include "bnslab/field.hpp"

namespace bnslab::fft {

// Scalar transforms on an n^3 grid.  to_physical evaluates the Fourier sum
// (input is not modified); to_spectral returns normalized coefficients.
// Both are safe to call from several threads at once.
void to_physical(const GridSpec& g, std::span<const cplx> coeffs, std::span<double> values);
void to_spectral(const GridSpec& g, std::span<const double> values, std::span<cplx> coeffs);

PhysicalField to_physical(const SpectralField& u);
SpectralField to_spectral(const PhysicalField& f);

}  // namespace bnslab::fft
