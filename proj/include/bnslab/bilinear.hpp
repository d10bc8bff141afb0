#pragma once

#include "bnslab/trajectory.hpp"

namespace bnslab {

// -P div(u (x)_s v) with (u (x)_s v)_{ab} = (u_a v_b + v_a u_b) / 2, the
// products formed in physical space and dealiased.
SpectralField bilinear_forcing(const SpectralField& u, const SpectralField& v);

// t -> int_0^t e^{(t-s) Delta} F(s) ds.  On each step the forcing is
// interpolated linearly in time and the heat kernel is integrated exactly
// per mode.
Trajectory duhamel_integral(const Trajectory& forcing);

// B(u, v)(t) = -int_0^t e^{(t-s) Delta} P div(u (x)_s v)(s) ds.
Trajectory bilinear_B(const Trajectory& u, const Trajectory& v);

// H(g)(t) = int_0^t e^{(t-s) Delta} P g(s) ds.
Trajectory heat_duhamel(const Trajectory& g);

// P div(a (x) b) for the forcing format used by solve_perturbed; products
// dealiased, not symmetrized.
SpectralField divergence_of_product(const SpectralField& a, const SpectralField& b);

}  // namespace bnslab
