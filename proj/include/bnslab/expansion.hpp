#pragma once

#include <cstddef>
#include <vector>

#include "bnslab/solver.hpp"
#include "bnslab/trajectory.hpp"

namespace bnslab {

// Multilinear terms plus a tail, with the relative defect of
// u = sum(terms) + tail in the endpoint norm L^{1:inf}_p.
struct ExpansionResult {
  std::vector<Trajectory> terms;
  Trajectory tail;
  double residual = 0.0;
  double p = 0.0;
  // Monitored norms, one per term (meaning depends on the producer), and of the tail.
  std::vector<double> term_norms;
  double tail_norm = 0.0;
};

// Relative distance ||a - b|| / ||reference|| in L^{1:inf}_p on the full window.
double relative_script_distance(const Trajectory& a, const Trajectory& b,
                                const Trajectory& reference, double p);

// u = H_N + Z_N where H_N is built from the caloric lift of u0 alone.
//   N = 2: H = uL,                                Z = B(u, u)
//   N = 3: H = uL + B(uL, uL),                    Z = 2B(uL, Z_2) + B(Z_2, Z_2)
//   N = 4: H = uL + B(uL, uL) + 2B(uL, B(uL, uL)), Z = 2B(uL, Z_3) + B(Z_2, Z_2)
// terms lists the homogeneous pieces of H by order.  Requires p > 3(N - 1).
// term_norms are L^{1:inf}_p norms; tail_norm is the L^{p/N}_{p/N} endpoint norm.
ExpansionResult duhamel_expand(const Trajectory& u, const SpectralField& u0, int N, double p);

// Drift v defining L[v] w = w - 2 B(v, w) and its inverse K[v].
struct OperatorHandle {
  Trajectory drift;
  // Sample indices where slabs start (0 first); empty means one slab.
  std::vector<std::size_t> slab_splits;
};

Trajectory apply_L(const OperatorHandle& h, const Trajectory& w);

struct InversionResult {
  Trajectory w;
  std::vector<std::size_t> slab_splits;
  int iterations = 0;  // total fixed-point sweeps over all slabs
};

// Solves w - 2B(v, w) = z slab by slab (B is causal), refining the slab
// partition until each slab contracts with factor below 1/2.  Throws
// NumericalError past 64 slabs or on a non-finite iterate.
InversionResult invert_K(const OperatorHandle& h, const Trajectory& z, double tol = 1e-13);

// u = sum_{n <= k} u_{L,n} + w_k for p = 3 * 2^k - 2:
//   u_{L,0} = e^{t Delta} u0,  v_n = sum_{m <= n} u_{L,m},
//   u_{L,n+1} = K[v_n] B(u_{L,n}, u_{L,n}),  w_{n+1} = K[v_n] B(w_n, w_n),
// starting from w_0 = u - u_{L,0} with u the Picard solution.
// term_norms[n] is the L^{1:inf}_{p/2^n} norm of u_{L,n}; tail_norm is the
// L^inf norm of w_k with spatial exponent 6p/(2p+1), q = inf.
struct SolutionExpansion {
  ExpansionResult expansion;
  Trajectory solution;
  BlowupReport solver_report;
};
SolutionExpansion expand_solution(const SpectralField& u0, int k, const SolverConfig& cfg);

struct SimpleIterationStep {
  Trajectory v;
  Trajectory w;
  double defect = 0.0;        // ||u - v - w|| / ||u|| in L^{1:inf}_p
  double v_sup_lp = 0.0;      // sup over the second half of the window of ||v(t)||_{L^p}
  double w_spacetime_l3 = 0.0;  // ||w||_{L^3([0,T] x torus)}
};

// v_{j+1} = e^{t Delta} u0 + B(v_j, v_j) + 2B(v_j, w_j),  w_{j+1} = B(w_j, w_j).
// Entry 0 holds the inputs.  Throws NumericalError when the defect exceeds
// (j + 1) * blowout at step j.
std::vector<SimpleIterationStep> simple_iteration(const SpectralField& u0, const Trajectory& u,
                                                  const Trajectory& v0, const Trajectory& w0,
                                                  int j_steps, double p, double blowout = 1e-6);

}  // namespace bnslab
