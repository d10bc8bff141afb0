#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "bnslab/bilinear.hpp"
#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/snapshot.hpp"
#include "bnslab/spectral_ops.hpp"
#include "bnslab/trajectory.hpp"
#include "oracle.hpp"

using namespace bnslab;

namespace {

constexpr double kPi = std::numbers::pi;

double physical_at(const PhysicalField& f, int a, int i, int j, int l) {
  const std::size_t n = f.grid.n;
  return f.v[a][(static_cast<std::size_t>(i) * n + j) * n + l];
}

}  // namespace

TEST_SUITE("spectral-core") {
  TEST_CASE("resolved shell range follows the period") {
    const GridSpec desk = GridSpec::make(32, kPi);
    CHECK(desk.j_min == 0);
    CHECK(desk.j_max == 4);
    const GridSpec standard = GridSpec::make(32);
    CHECK(standard.j_min == -1);
    CHECK(standard.j_max == 3);
    CHECK_THROWS_AS(GridSpec::make(24), ConfigError);
    CHECK_THROWS_AS(GridSpec::make(8), ConfigError);
  }

  TEST_CASE("synthesis matches direct Fourier sums") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, 3);
    const PhysicalField f = fft::to_physical(u);
    for (auto [i, j, l] : {std::array{0, 0, 0}, std::array{3, 7, 11}, std::array{15, 2, 9}}) {
      const std::array<double, 3> x{i * g.spacing(), j * g.spacing(), l * g.spacing()};
      for (int a = 0; a < 3; ++a)
        CHECK(physical_at(f, a, i, j, l) == doctest::Approx(oracle::point_value(u, a, x)).epsilon(1e-12));
    }
  }

  TEST_CASE("forward and inverse transforms are mutually inverse") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 15.0, 1.0, 5);
    const SpectralField back = fft::to_spectral(fft::to_physical(u));
    CHECK(max_abs_difference(u, back) <= 1e-15 * max_abs_coefficient(u) * 100);
    CHECK(hermitian_defect(u) == 0.0);
  }

  TEST_CASE("Parseval: inner product equals the physical quadrature") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField u = random_bandlimited(g, 1.0, 5.0, 2.0, 7);
    const PhysicalField f = fft::to_physical(u);
    double sum = 0.0;
    for (int a = 0; a < 3; ++a)
      for (double x : f.v[a]) sum += x * x;
    CHECK(inner_product(u, u) == doctest::Approx(sum * g.cell_volume()).epsilon(1e-12));
    // rms normalization: mean of |u|^2 equals amplitude^2.
    CHECK(sum / g.physical_size() == doctest::Approx(4.0).epsilon(1e-12));
  }

  TEST_CASE("Leray projection is idempotent and removes divergence") {
    const GridSpec g = GridSpec::make(16);
    SpectralField u(g);
    set_coefficient(u, 0, 1, 2, 0, {1.0, 0.5});
    set_coefficient(u, 1, 1, 2, 0, {-0.3, 0.2});
    set_coefficient(u, 2, 0, 1, 3, {0.7, -0.1});
    CHECK(divergence_defect(u) > 1e-3);
    const SpectralField p = leray_project(u);
    CHECK(divergence_defect(p) <= 1e-15);
    CHECK(max_abs_difference(leray_project(p), p) <= 1e-16);
  }

  TEST_CASE("heat flow damps each mode by exp(-tau |xi|^2)") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField u = single_mode(g, {1, 2, 2}, {2.0, -1.0, 0.0});
    const double tau = 0.013;
    const SpectralField h = heat_flow(u, tau);
    const double xi2 = 4.0 * 9.0;
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(coefficient(h, a, 1, 2, 2) - std::exp(-tau * xi2) * coefficient(u, a, 1, 2, 2)) <=
            1e-16);
  }

  TEST_CASE("translation shifts point values") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField u = random_bandlimited(g, 1.0, 3.0, 1.0, 11);
    const std::array<double, 3> shift{0.3, -1.1, 2.0};
    const SpectralField t = translate(u, shift);
    const std::array<double, 3> x{0.9, 0.4, 5.0};
    const std::array<double, 3> back{x[0] - shift[0], x[1] - shift[1], x[2] - shift[2]};
    CHECK(oracle::point_value(t, 1, x) == doctest::Approx(oracle::point_value(u, 1, back)).epsilon(1e-12));
  }

  TEST_CASE("change of scale keeps coefficients and shifts blocks") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 6.0, 1.0, 2);
    const SpectralField s = change_scale(u, -1, 2.0);
    CHECK(s.grid().period == doctest::Approx(kPi / 2));
    CHECK(s.grid().j_min == g.j_min + 1);
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < u.component(a).size(); ++i)
        REQUIRE(s.component(a)[i] == 2.0 * u.component(a)[i]);
    CHECK(l2_norm(block(s, 3)) / l2_norm(block(u, 2)) ==
          doctest::Approx(2.0 * std::pow(0.5, 1.5)).epsilon(1e-12));
  }

  TEST_CASE("dilation on the grid moves modes and refuses to leave it") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField u = single_mode(g, {1, 0, 2}, {0.0, 1.0, 0.0});
    const SpectralField d = dilate_on_grid(u, 1);
    CHECK(coefficient(d, 1, 2, 0, 4) == coefficient(u, 1, 1, 0, 2));
    CHECK_THROWS_AS(dilate_on_grid(u, 3), ArgumentError);
  }

  TEST_CASE("refinement preserves point values") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, 13);
    const SpectralField r = refine(u, 1);
    CHECK(r.grid().n == 32);
    const std::array<double, 3> x{1.0, 2.0, 3.0};
    CHECK(oracle::point_value(r, 2, x) == doctest::Approx(oracle::point_value(u, 2, x)).epsilon(1e-12));
  }

  TEST_CASE("two-thirds rule") {
    const GridSpec g = GridSpec::make(32);
    SpectralField u = random_bandlimited(g, 1.0, 15.0, 1.0, 4);
    dealias(u);
    for_each_mode(g, [&](const Mode& m) {
      if (m.k2() > (32.0 / 3.0) * (32.0 / 3.0))
        for (int a = 0; a < 3; ++a) REQUIRE(u.component(a)[m.index] == cplx{});
    });
    CHECK(dealias_keeps(g, 100.0));
    CHECK_FALSE(dealias_keeps(g, 121.0));
  }

  TEST_CASE("random band-limited data is grid independent and solenoidal") {
    const SpectralField a = random_bandlimited(GridSpec::make(32, kPi), 1.0, 6.0, 1.5, 9);
    const SpectralField b = random_bandlimited(GridSpec::make(64, kPi), 1.0, 6.0, 1.5, 9);
    for (auto k : {std::array{1, 0, 0}, std::array{2, -3, 1}, std::array{0, 4, -4}})
      for (int c = 0; c < 3; ++c)
        CHECK(std::abs(coefficient(a, c, k[0], k[1], k[2]) - coefficient(b, c, k[0], k[1], k[2])) <= 1e-15);
    CHECK(divergence_defect(a) <= 1e-15);
    CHECK(lp_norm(a, 2.0) / std::pow(kPi, 1.5) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(random_bandlimited(GridSpec::make(16), 1.0, 9.0, 1.0, 1), ArgumentError);
  }

  TEST_CASE("Gaussian vortex scales like a critical profile") {
    const GridSpec g = GridSpec::make(64, kPi);
    const std::array<double, 3> core{1.0, 1.5, 2.0};
    const SpectralField wide = gaussian_vortex(g, 0.4, core, {0.0, 0.0, 1.0});
    const SpectralField narrow = gaussian_vortex(g, 0.2, core, {0.0, 0.0, 1.0});
    CHECK(divergence_defect(wide) <= 1e-14);
    CHECK(lp_norm(narrow, inf) / lp_norm(wide, inf) == doctest::Approx(2.0).epsilon(0.02));
    // Velocity of curl(A e_z) at distance w from the core along x is |dA/dx| = e^{-1/2} / w.
    const std::array<double, 3> x{core[0] + 0.4, core[1], core[2]};
    CHECK(std::abs(oracle::point_value(wide, 1, x)) == doctest::Approx(std::exp(-0.5) / 0.4).epsilon(1e-3));
  }

  TEST_CASE("bilinear forcing matches explicit convolution") {
    const GridSpec g = GridSpec::make(16);
    SpectralField u = single_mode(g, {1, 2, 0}, {1.0, 0.0, 0.3});
    u += single_mode(g, {0, 1, -1}, {0.2, 1.0, 0.5}, 0.7);
    const SpectralField v = single_mode(g, {2, 0, 1}, {0.0, 1.0, 0.0}, 1.3);
    const SpectralField lib = bilinear_forcing(u, v);
    const auto ref = oracle::forcing_by_convolution(u, v);
    double worst = 0.0;
    for (const auto& [k, amp] : ref)
      for (int a = 0; a < 3; ++a)
        worst = std::max(worst, std::abs(coefficient(lib, a, k[0], k[1], k[2]) - amp[a]));
    // Nothing outside the convolution support.
    const auto lib_modes = oracle::spectrum(lib);
    for (const auto& [k, amp] : lib_modes)
      if (!ref.count(k))
        for (int a = 0; a < 3; ++a) worst = std::max(worst, std::abs(amp[a]));
    CHECK(worst <= 1e-14);
  }

  TEST_CASE("exponential integrator is exact for affine-in-time forcing") {
    const GridSpec g = GridSpec::make(16);
    const SpectralField f0 = single_mode(g, {1, 1, 0}, {1.0, -1.0, 0.0});
    const SpectralField f1 = single_mode(g, {1, 1, 0}, {1.0, -1.0, 0.0}, -0.4);
    const auto times = uniform_times(0.5, 8);
    Trajectory forcing = Trajectory::zeros(g, times);
    for (std::size_t i = 0; i < times.size(); ++i) forcing.snapshots[i] = f0 + times[i] * f1;
    const Trajectory d = duhamel_integral(forcing);
    const double z = 2.0;  // |xi|^2
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      // int_0^t e^{-z(t-s)} (1 + c s) ds with c = -0.4
      const double e = std::exp(-z * t);
      const double exact = (1.0 - e) / z - 0.4 * (t / z - (1.0 - e) / (z * z));
      CHECK(std::abs(coefficient(d.snapshots[i], 0, 1, 1, 0) - exact * coefficient(f0, 0, 1, 1, 0)) <= 1e-15);
    }
  }

  TEST_CASE("snapshots round-trip bit for bit") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 5.0, 1.0, 21);
    const auto path = std::filesystem::temp_directory_path() / "bnslab_roundtrip.bnsf";
    write_snapshot(u, path);
    const SpectralField back = read_snapshot(path);
    std::filesystem::remove(path);
    CHECK(back.grid() == g);
    CHECK(back.divergence_free() == u.divergence_free());
    CHECK(max_abs_difference(u, back) == 0.0);
  }
}
