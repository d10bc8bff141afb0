#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bnslab/errors.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/solver.hpp"
#include "bnslab/space_time.hpp"
#include "bnslab/spectral_ops.hpp"
#include "oracle.hpp"

using namespace bnslab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("function-spaces") {
  TEST_CASE("cutoff agrees with an independent formula") {
    for (double r = 0.0; r <= 2.5; r += 0.0137) CHECK(cutoff(r) == doctest::Approx(oracle::cutoff(r)).epsilon(1e-14));
    CHECK(cutoff(1.0) == 1.0);
    CHECK(cutoff(2.0) == 0.0);
    CHECK(cutoff(1.5) == doctest::Approx(0.5));
  }

  TEST_CASE("blocks are supported on (2^j, 2^{j+2}) and sum to one") {
    for (int j = -2; j <= 5; ++j) {
      CHECK(block_weight(j, std::ldexp(1.0, j)) == 0.0);
      CHECK(block_weight(j, std::ldexp(1.0, j + 2)) == 0.0);
      CHECK(block_weight(j, std::ldexp(1.5, j + 1)) > 0.0);
    }
    // Telescoping: S_{j_min} + sum_{j_min..j_max} Delta_j = S_{j_max + 1}.
    for (double x = 0.3; x < 60.0; x *= 1.07) {
      double sum = lowpass_weight(-3, x);
      for (int j = -3; j <= 5; ++j) sum += block_weight(j, x);
      CHECK(sum == doctest::Approx(lowpass_weight(6, x)).epsilon(1e-14));
    }
  }

  TEST_CASE("property: reconstruction of band-limited fields") {
    const GridSpec g = GridSpec::make(32, kPi);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SpectralField u = random_bandlimited(g, 1.0, 15.0, 1.0, seed);
      CHECK(l2_norm(u - reconstruct(lp_decompose(u))) <= 1e-13 * l2_norm(u));
    }
  }

  TEST_CASE("the smallest grid still resolves four shells") {
    for (double period : {kPi, 2.0 * kPi, 4.0 * kPi}) CHECK(GridSpec::make(16, period).shell_count() == 4);
  }

  TEST_CASE("Lebesgue norms: constants, Parseval and tiny fields") {
    const GridSpec g = GridSpec::make(16);
    SpectralField c(g);
    set_coefficient(c, 0, 0, 0, 0, {3.0, 0.0});
    const double vol = std::pow(2.0 * kPi, 3);
    for (double p : {1.0, 2.0, 3.5, 10.0}) CHECK(lp_norm(c, p) == doctest::Approx(3.0 * std::pow(vol, 1.0 / p)));
    CHECK(lp_norm(c, inf) == doctest::Approx(3.0));
    const SpectralField u = random_bandlimited(g, 1.0, 5.0, 1.0, 8);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(l2_norm(u)).epsilon(1e-12));
    // Values far below the square root of the smallest normal double.
    const SpectralField tiny = 1e-200 * u;
    CHECK(lp_norm(tiny, 6.0) == doctest::Approx(1e-200 * lp_norm(u, 6.0)).epsilon(1e-12));
    CHECK(lp_norm(1e200 * u, 10.0) == doctest::Approx(1e200 * lp_norm(u, 10.0)).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(u, 0.5), ArgumentError);
  }

  TEST_CASE("property: critical Besov norms are invariant under dyadic scaling") {
    const GridSpec g = GridSpec::make(32, kPi);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const SpectralField u = random_bandlimited(g, 1.0, 8.0, 1.0, 40 + seed);
      for (double p : {3.5, 6.0, 10.0}) {
        const BesovIndex idx = critical_index(p, 2.0);
        CHECK(besov_norm(scaling_transform(u, 1), idx) == doctest::Approx(besov_norm(u, idx)).epsilon(1e-12));
        CHECK(besov_norm(scaling_transform(u, -2), idx) == doctest::Approx(besov_norm(u, idx)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Besov norm of a single-shell field is the weighted block norm") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u = shell_bump(g, 2, 1.0, 3);
    // Lattice sphere |xi| = 8 is seen by block 2 alone, with weight one.
    const auto norms = block_lp_norms(u, 4.0);
    for (int j = g.j_min; j <= g.j_max; ++j)
      if (j != 2) CHECK(norms[j - g.j_min] == 0.0);
    CHECK(norms[2 - g.j_min] == doctest::Approx(lp_norm(u, 4.0)));
    CHECK(besov_norm(u, {0.5, 4.0, 1.0}) == doctest::Approx(std::pow(2.0, 1.0) * lp_norm(u, 4.0)));
  }

  TEST_CASE("Bernstein: raising integrability at the critical shift is bounded") {
    const GridSpec g = GridSpec::make(32, kPi);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const SpectralField u = random_bandlimited(g, 1.0, 12.0, 1.0, 60 + seed);
      worst = std::max(worst, bernstein_check(u, 0.0, 2.0, 8.0, 2.0).ratio);
    }
    CHECK(worst > 0.0);
    CHECK(worst <= 8.0);
    CHECK_THROWS_AS(bernstein_check(SpectralField(g), 0.0, 4.0, 2.0, 2.0), ArgumentError);
  }

  TEST_CASE("time Lebesgue norms by trapezoid") {
    const std::vector<double> t = uniform_times(2.0, 16);
    const std::vector<double> ones(t.size(), 3.0);
    CHECK(time_lebesgue(t, ones, 2.0, 0.0, 2.0) == doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK(time_lebesgue(t, ones, inf, 0.5, 1.0) == 3.0);
    CHECK_THROWS_AS(time_lebesgue(t, ones, 0.5, 0.0, 1.0), ArgumentError);
  }

  TEST_CASE("embedding chain holds on heat trajectories") {
    const GridSpec g = GridSpec::make(32, kPi);
    const Trajectory u = heat_trajectory(random_bandlimited(g, 1.0, 10.0, 1.0, 17), uniform_times(0.25, 32));
    for (double rho1 : {1.0, 2.0})
      for (double rho2 : {4.0, inf}) {
        const auto r = embedding_chain_check(u, rho1, rho2, {0.0, 4.0, 3.0}, 0.0, 0.25);
        CHECK_MESSAGE(r.holds, r.failure);
      }
  }

  TEST_CASE("heat flow of a single shell: Chemin-Lerner norm by hand") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u = shell_bump(g, 1, 1.0, 5);
    const auto times = uniform_times(0.5, 2048);
    const Trajectory h = heat_trajectory(u, times);
    // ||Delta_1 e^{t Delta} u||_{L^p} = e^{-16 t} ||u||_{L^p}; L^1 in time gives (1 - e^{-8}) / 16.
    const double expected = std::pow(2.0, 1.0) * lp_norm(u, 4.0) * (1.0 - std::exp(-8.0)) / 16.0;
    const double cl = chemin_lerner_norm(h, {NormKind::chemin_lerner, 1.0, 1.0, {1.0, 4.0, 2.0}, 0.0, 0.5});
    CHECK(cl == doctest::Approx(expected).epsilon(1e-5));
  }

  TEST_CASE("script norm endpoints and Kato norm scaling") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u0 = random_bandlimited(g, 1.0, 4.0, 1.0, 23);
    SolverConfig cfg;
    const Trajectory h = heat_trajectory(u0, cfg.times());
    const auto table = block_norm_table(h, 6.0);
    const double both = script_norm(table, 1.0, inf, 6.0, 0.0, 1.0);
    CHECK(both == doctest::Approx(std::max(script_norm(table, 1.0, 1.0, 6.0, 0.0, 1.0),
                                           script_norm(table, inf, inf, 6.0, 0.0, 1.0))));
    // Kato norms of rescaled heat flows agree at matching windows.
    const Trajectory s = scaling_transform(h, 1);
    CHECK(kato_norm(s, 6.0, 0.25, 0) == doctest::Approx(kato_norm(h, 6.0, 1.0, 0)).epsilon(1e-12));
    CHECK_THROWS_AS(kato_norm(h, 3.0, 1.0, 0), ArgumentError);
  }
}
