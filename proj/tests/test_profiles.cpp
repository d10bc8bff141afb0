#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bnslab/errors.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/profiles.hpp"
#include "oracle.hpp"

using namespace bnslab;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_core(const ScaleCore& a, const ScaleCore& b) {
  if (a.m != b.m) return false;
  for (int i = 0; i < 3; ++i)
    if (std::abs(a.core[i] - b.core[i]) > 1e-14) return false;
  return true;
}

}  // namespace

TEST_SUITE("profiles") {
  TEST_CASE("scale-core composition and inverse") {
    const ScaleCore a{2, {0.1, -0.2, 0.3}};
    const ScaleCore b{-3, {0.5, 0.25, -0.125}};
    CHECK(same_core(compose(a, inverse(a)), ScaleCore{}));
    CHECK(same_core(compose(inverse(b), b), ScaleCore{}));
    // Applying a then b pointwise.
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, 3);
    const SpectralField two_step = scale_op(b, scale_op(a, u));
    const SpectralField one_step = scale_op(compose(a, b), u);
    CHECK(two_step.grid().period == doctest::Approx(one_step.grid().period));
    for (int c = 0; c < 3; ++c)
      CHECK(oracle::point_value(two_step, c, {0.2, 0.7, 0.05}) ==
            doctest::Approx(oracle::point_value(one_step, c, {0.2, 0.7, 0.05})).epsilon(1e-10));
  }

  TEST_CASE("scale_op matches (1/lambda) U((x - core)/lambda) pointwise") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 6.0, 1.0, 9);
    const ScaleCore sc{-2, {0.3, 0.1, -0.4}};
    const SpectralField v = scale_op(sc, u);
    CHECK(v.grid().period == doctest::Approx(kPi / 4.0));
    CHECK(divergence_defect(v) <= 1e-12);
    for (const std::array<double, 3> x : {std::array<double, 3>{0.1, 0.2, 0.3}, {0.7, -0.05, 0.4}}) {
      std::array<double, 3> y{};
      for (int i = 0; i < 3; ++i) y[i] = (x[i] - sc.core[i]) / sc.lambda();
      for (int c = 0; c < 3; ++c)
        CHECK(oracle::point_value(v, c, x) ==
              doctest::Approx(oracle::point_value(u, c, y) / sc.lambda()).epsilon(1e-10));
    }
  }

  TEST_CASE("property: the critical norm is invariant under every scale-core") {
    const GridSpec g = GridSpec::make(32, kPi);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      // Band [1, 4]: |Delta_j u|^4 stays resolved, so off-grid shifts are exact.
      const SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, 70 + seed);
      const double base = critical_norm_pow(single(u), 4.0);
      CHECK(base == doctest::Approx(std::pow(besov_norm(u, critical_index(4.0, 4.0)), 4.0)).epsilon(1e-12));
      for (int m : {-3, 1}) {
        const ScaleCore sc{m, {0.1 * seed, 0.0, -0.2}};
        CHECK(critical_norm_pow(single(scale_op(sc, u)), 4.0) == doctest::Approx(base).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("normalized merges terms of one level and drops zeros") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, 5);
    const MultiscaleField f = single(u) + single(u) + single(SpectralField(g)) +
                              single(scale_op(ScaleCore{-1, {}}, u));
    const MultiscaleField n = normalized(f);
    REQUIRE(n.terms.size() == 2);
    CHECK(level_of(g, n.terms[0].grid()) != level_of(g, n.terms[1].grid()));
    for (const auto& t : n.terms)
      if (level_of(g, t.grid()) == 0) CHECK(max_abs_difference(t, 2.0 * u) <= 1e-15);
    CHECK(normalized(scaled(0.0, f)).terms.empty());
    CHECK_THROWS_AS(level_of(g, GridSpec::make(16, 3.0)), ArgumentError);
  }

  TEST_CASE("orthogonality gap formula") {
    const std::vector<ScaleCore> a = {{0, {0.0, 0.0, 0.0}}, {3, {0.0, 0.0, 0.0}}};
    const std::vector<ScaleCore> b = {{0, {3.0, 4.0, 0.0}}, {-1, {0.0, 0.0, 0.0}}};
    CHECK(orthogonality_gap(a, b, 0) == doctest::Approx(2.0 + 5.0));
    CHECK(orthogonality_gap(a, b, 1) == doctest::Approx(16.0 + 1.0 / 16.0));
  }

  TEST_CASE("cross term vanishes for fields on disjoint shells") {
    const GridSpec g = GridSpec::make(32, kPi);
    const SpectralField a = shell_bump(g, 0, 1.0, 1);
    const SpectralField b = shell_bump(g, 3, 1.0, 2);
    CHECK(cross_term(single(a), single(b), 4) == 0.0);
    CHECK(cross_term(single(a), single(a), 4) > 0.0);
  }

  TEST_CASE("a single placed profile has no Pythagorean defect") {
    const GridSpec g = GridSpec::make(16, kPi);
    ProfileSet ps;
    ps.profiles = {random_bandlimited(g, 1.0, 6.0, 1.0, 12)};
    ps.schedules.resize(1);
    std::vector<MultiscaleField> seq;
    for (int n = 0; n < 3; ++n) {
      ps.schedules[0].push_back({-n, {0.1 * n, 0.0, 0.0}});
      ps.remainders.push_back(MultiscaleField{g, {}});
      seq.push_back(synthesize(ps, n, 1));
    }
    for (const auto& row : pythagorean_check(ps, seq, {0, 1, 2}, 1, 4.0)) {
      CHECK(row.relative <= 1e-9);
      CHECK(row.total > 0.0);
    }
  }

  TEST_CASE("a constant sequence yields one profile and a vanishing remainder") {
    const GridSpec g = GridSpec::make(16, kPi);
    const SpectralField phi = random_bandlimited(g, 1.0, 4.0, 1.0, 21);
    const std::vector<MultiscaleField> seq(4, single(phi));
    ExtractionOptions opt;
    opt.threshold = 1e-6;
    const ProfileSet ps = extract_profiles(seq, opt);
    REQUIRE(ps.profiles.size() == 1);
    CHECK(critical_norm_pow(single(ps.profiles[0]), 4.0) ==
          doctest::Approx(critical_norm_pow(single(phi), 4.0)).epsilon(1e-8));
    CHECK(besov_norm(remainder_at(ps, 3, 1), critical_index(6.0, 6.0)) <= 1e-6);
  }
}
