#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnslab/littlewood_paley.hpp"
#include "bnslab/trajectory.hpp"

namespace bnslab {

struct SolverConfig {
  double dt = 1.0 / 64.0;
  int n_steps = 64;
  double picard_tol = 1e-8;  // relative, in the endpoint space L^{1:inf}_p
  int max_picard_iters = 40;
  double c0_estimate = 0.0;  // small-data threshold in B^{s_p}_{p,p}
  std::string dealias = "two_thirds";
  double growth_threshold = 10.0;  // heuristic for the `growing` label

  double final_time() const { return dt * n_steps; }
  std::vector<double> times() const;
  void validate() const;
};

enum class Classification { decaying, growing, picard_diverged };
std::string to_string(Classification c);

struct BlowupReport {
  std::vector<double> times;
  std::vector<double> besov_norms;    // ||u(t)||_{B^{s_p}_{p,q}}
  std::vector<double> running_norms;  // L^{1:inf}_{p,q}(0, t)
  Classification classification = Classification::decaying;
  std::vector<double> picard_residuals;  // relative increments, one per iterate
  int iterations = 0;
  bool converged = false;
  double max_divergence_defect = 0.0;
};

struct SolveResult {
  Trajectory u;
  BlowupReport report;
};

// Fixed point u = e^{t Delta} u0 + B(u, u) by Picard iteration over the whole
// window, monitored in the Besov index `idx` (s is ignored: s_p is used).
SolveResult picard_solve(const SpectralField& u0, const SolverConfig& cfg, const BesovIndex& idx);

// lambda u0(lambda x), lambda = 2^m, on the torus of period L / lambda.
SpectralField scaling_transform(const SpectralField& u0, int m);
// lambda u(lambda^2 t, lambda x) sampled at t / lambda^2.
Trajectory scaling_transform(const Trajectory& u, int m);

// Largest amplitude (in B^{s_p}_{p,p} norm) of the canonical random datum for
// which Picard converges within cfg.max_picard_iters and the final critical
// norm is below the initial one.
double calibrate_c0(const GridSpec& g, double p, SolverConfig cfg, std::uint64_t seed,
                    int bisection_steps = 10);
// Canonical datum used by calibrate_c0, normalized to unit B^{s_p}_{p,p} norm.
SpectralField canonical_datum(const GridSpec& g, double p, std::uint64_t seed);

struct PerturbedResult {
  Trajectory w;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residuals;
};

// w = e^{t Delta} w0 + B(w, w) + 2 B(v1 + v2, w) + H(f1 + f2); the quadratic
// term is dropped when `linear` is set.  The forcings are the spectral fields
// whose Leray projection is integrated by H.
PerturbedResult solve_perturbed(const SpectralField& w0, const Trajectory& v1, const Trajectory& v2,
                                const Trajectory& f1, const Trajectory& f2, const SolverConfig& cfg,
                                double p, bool linear = false);

// Per-step relative defect of the L2 energy balance
//   E(t_{i+1}) - E(t_i) + int ||grad u||^2 = 0,  E = ||u||^2 / 2,
// with the dissipation integrated by the trapezoid rule.
std::vector<double> energy_balance_defects(const Trajectory& u);

}  // namespace bnslab
