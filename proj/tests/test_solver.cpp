#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bnslab/bilinear.hpp"
#include "bnslab/errors.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/solver.hpp"
#include "bnslab/spectral_ops.hpp"

using namespace bnslab;

namespace {

constexpr double kPi = std::numbers::pi;

SolverConfig short_run(int steps = 16, double dt = 1.0 / 64.0) {
  SolverConfig c;
  c.dt = dt;
  c.n_steps = steps;
  c.picard_tol = 1e-12;
  return c;
}

}  // namespace

TEST_SUITE("ns-mild-solver") {
  TEST_CASE("zero datum gives the zero solution") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SolveResult r = picard_solve(SpectralField(g), short_run(4), critical_index(10, 10));
    CHECK(r.report.converged);
    CHECK(max_abs_coefficient(r.u) == 0.0);
    CHECK(r.report.classification == Classification::decaying);
  }

  TEST_CASE("shear flow: the nonlinearity vanishes and the solution is the heat flow") {
    const GridSpec g = GridSpec::make(16);
    // u = (0, f(x), 0): u . grad u = 0.
    const SpectralField u0 = single_mode(g, {1, 0, 0}, {0.0, 1.0, 0.0}, 3.0);
    const SolverConfig cfg = short_run(8);
    const SolveResult r = picard_solve(u0, cfg, critical_index(10, 10));
    CHECK(r.report.converged);
    CHECK(max_abs_difference(r.u, heat_trajectory(u0, cfg.times())) <= 1e-15);
  }

  TEST_CASE("small data converges, decays and stays solenoidal") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u0 = 0.5 * canonical_datum(g, 10.0, 2024);
    const SolveResult r = picard_solve(u0, short_run(), critical_index(10, 10));
    CHECK(r.report.converged);
    CHECK(r.report.max_divergence_defect <= 1e-13);
    CHECK(r.report.besov_norms.back() < r.report.besov_norms.front());
    CHECK(r.report.running_norms.front() == 0.0);
    CHECK(r.report.running_norms.back() >= r.report.running_norms[1]);
    CHECK(to_string(r.report.classification) == "decaying");
    // Residuals fall once the iteration has settled.
    const auto& res = r.report.picard_residuals;
    CHECK(res.back() < 1e-12);
    CHECK(res.back() < res[1]);
  }

  TEST_CASE("mild formulation: the solution satisfies u = e^{t Delta} u0 + B(u, u)") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u0 = canonical_datum(g, 10.0, 7);
    const SolverConfig cfg = short_run();
    const SolveResult r = picard_solve(u0, cfg, critical_index(10, 10));
    const Trajectory rhs = heat_trajectory(u0, cfg.times()) + bilinear_B(r.u, r.u);
    CHECK(max_abs_difference(r.u, rhs) <= 1e-11 * max_abs_coefficient(r.u));
  }

  TEST_CASE("equivariance under the dyadic scaling") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u0 = canonical_datum(g, 10.0, 2024);
    const SolverConfig cfg = short_run(8);
    const SolveResult base = picard_solve(u0, cfg, critical_index(10, 10));
    SolverConfig fine = cfg;
    fine.dt = cfg.dt / 4.0;
    const SolveResult scaled = picard_solve(scaling_transform(u0, 1), fine, critical_index(10, 10));
    const Trajectory expected = scaling_transform(base.u, 1);
    CHECK(max_abs_difference(expected, scaled.u) <= 1e-12 * max_abs_coefficient(expected));
    CHECK(scaled.report.iterations == base.report.iterations);
  }

  TEST_CASE("large data is reported as diverged, not hidden") {
    const GridSpec g = GridSpec::make(32, kPi);
    SolverConfig cfg = short_run(16, 1.0 / 16.0);
    cfg.max_picard_iters = 12;
    const SolveResult r = picard_solve(200.0 * canonical_datum(g, 10.0, 3), cfg, critical_index(10, 10));
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.classification == Classification::picard_diverged);
  }

  TEST_CASE("energy balance holds along a resolved solution") {
    const GridSpec g = GridSpec::make(32, kPi);
    SolverConfig cfg = short_run(32, 0.25 / 64.0);
    cfg.picard_tol = 1e-11;
    const SolveResult r = picard_solve(random_bandlimited(g, 1.0, 3.0, 1.0, 91), cfg, critical_index(10, 10));
    REQUIRE(r.report.converged);
    for (double d : energy_balance_defects(r.u)) CHECK(d <= 0.01);
  }

  TEST_CASE("perturbed solver: zero drift and forcing reduces to the plain solver") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SolverConfig cfg = short_run(8);
    const SpectralField w0 = 0.3 * canonical_datum(g, 10.0, 5);
    const Trajectory zero = Trajectory::zeros(g, cfg.times());
    const PerturbedResult p = solve_perturbed(w0, zero, zero, zero, zero, cfg, 10.0);
    const SolveResult plain = picard_solve(w0, cfg, critical_index(10, 10));
    CHECK(p.converged);
    CHECK(max_abs_difference(p.w, plain.u) <= 1e-11 * max_abs_coefficient(plain.u));
    // Linear mode without drift is the heat flow.
    const PerturbedResult lin = solve_perturbed(w0, zero, zero, zero, zero, cfg, 10.0, true);
    CHECK(max_abs_difference(lin.w, heat_trajectory(w0, cfg.times())) <= 1e-15);
  }

  TEST_CASE("configuration validation") {
    SolverConfig cfg;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = SolverConfig{};
    cfg.dealias = "none";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK_THROWS_AS(scaling_transform(random_bandlimited(GridSpec::make(16), 1, 3, 1, 1), 2000), ArgumentError);
  }
}
