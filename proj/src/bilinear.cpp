#include "bnslab/bilinear.hpp"

#include <cmath>
#include <vector>

#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"
#include "bnslab/parallel.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

// Weights of one exponential step for every integer |k|^2:
//   I(t+h) = decay I(t) + w_old F(t) + w_new F(t+h).
struct StepWeights {
  std::vector<double> decay, w_old, w_new;
};

StepWeights step_weights(const GridSpec& g, double h) {
  const int k2_max = 3 * (g.n / 2) * (g.n / 2);
  StepWeights w;
  w.decay.resize(k2_max + 1);
  w.w_old.resize(k2_max + 1);
  w.w_new.resize(k2_max + 1);
  const double unit2 = g.unit() * g.unit();
  for (int k2 = 0; k2 <= k2_max; ++k2) {
    const double z = unit2 * k2 * h;
    double g1, g2;  // (1 - e^{-z})/z and (1 - e^{-z}(1+z))/z^2
    if (z < 1e-3) {
      g1 = 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
      g2 = 0.5 - z / 3.0 + z * z / 8.0 - z * z * z / 30.0 + z * z * z * z / 144.0;
    } else {
      const double em = -std::expm1(-z);
      g1 = em / z;
      g2 = (em - z * std::exp(-z)) / (z * z);
    }
    w.decay[k2] = std::exp(-z);
    w.w_old[k2] = h * g2;
    w.w_new[k2] = h * (g1 - g2);
  }
  return w;
}

SpectralField tensor_divergence(const GridSpec& g, const std::array<std::vector<double>, 6>& t) {
  // t holds T_xx, T_xy, T_xz, T_yy, T_yz, T_zz.
  std::array<std::vector<cplx>, 6> th;
  for (int c = 0; c < 6; ++c) {
    th[c].resize(g.spectral_size());
    fft::to_spectral(g, t[c], th[c]);
  }
  static constexpr int sym[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  SpectralField out(g);
  const double unit = g.unit();
  for_each_mode(g, [&](const Mode& m) {
    if (!dealias_keeps(g, m.k2()) || is_nyquist(g, m.kx, m.ky, m.kz)) return;
    const double k[3] = {unit * m.kx, unit * m.ky, unit * m.kz};
    for (int a = 0; a < 3; ++a) {
      cplx s{};
      for (int b = 0; b < 3; ++b) s += k[b] * th[sym[a][b]][m.index];
      out.component(a)[m.index] = cplx{0.0, 1.0} * s;
    }
  });
  return out;
}

}  // namespace

SpectralField bilinear_forcing(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u.grid(), v.grid(), "bilinear form");
  const GridSpec& g = u.grid();
  const PhysicalField pu = fft::to_physical(u);
  const PhysicalField pv = (&u == &v) ? pu : fft::to_physical(v);
  const std::size_t n = g.physical_size();
  std::array<std::vector<double>, 6> t;
  static constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (int c = 0; c < 6; ++c) {
    const int a = pairs[c][0], b = pairs[c][1];
    t[c].resize(n);
    for (std::size_t i = 0; i < n; ++i)
      t[c][i] = 0.5 * (pu.v[a][i] * pv.v[b][i] + pv.v[a][i] * pu.v[b][i]);
  }
  SpectralField f = tensor_divergence(g, t);
  leray_project_inplace(f);
  f *= -1.0;
  return f;
}

SpectralField divergence_of_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "product divergence");
  const GridSpec& g = a.grid();
  const PhysicalField pa = fft::to_physical(a), pb = fft::to_physical(b);
  // div(a (x) b)_i = d_j (a_i b_j), a full (non-symmetric) tensor.
  SpectralField out(g);
  std::array<std::array<std::vector<cplx>, 3>, 3> th;
  std::vector<double> prod(g.physical_size());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = pa.v[i][x] * pb.v[j][x];
      th[i][j].resize(g.spectral_size());
      fft::to_spectral(g, prod, th[i][j]);
    }
  const double unit = g.unit();
  for_each_mode(g, [&](const Mode& m) {
    if (!dealias_keeps(g, m.k2()) || is_nyquist(g, m.kx, m.ky, m.kz)) return;
    const double k[3] = {unit * m.kx, unit * m.ky, unit * m.kz};
    for (int i = 0; i < 3; ++i) {
      cplx s{};
      for (int j = 0; j < 3; ++j) s += k[j] * th[i][j][m.index];
      out.component(i)[m.index] = cplx{0.0, 1.0} * s;
    }
  });
  leray_project_inplace(out);
  return out;
}

Trajectory duhamel_integral(const Trajectory& forcing) {
  validate(forcing);
  const GridSpec& g = forcing.grid;
  Trajectory out = Trajectory::zeros(g, forcing.times);
  const auto& k2 = mode_k2(g);
  std::vector<int> k2i(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) k2i[i] = static_cast<int>(std::lround(k2[i]));
  double last_h = -1.0;
  StepWeights w;
  for (std::size_t s = 1; s < forcing.size(); ++s) {
    const double h = forcing.times[s] - forcing.times[s - 1];
    if (std::abs(h - last_h) > 1e-15 * h) {
      w = step_weights(g, h);
      last_h = h;
    }
    const SpectralField& prev = out.snapshots[s - 1];
    SpectralField& cur = out.snapshots[s];
    for (int a = 0; a < 3; ++a) {
      const auto& ip = prev.component(a);
      const auto& f0 = forcing.snapshots[s - 1].component(a);
      const auto& f1 = forcing.snapshots[s].component(a);
      auto& ic = cur.component(a);
      for (std::size_t i = 0; i < ic.size(); ++i) {
        const int kk = k2i[i];
        ic[i] = w.decay[kk] * ip[i] + w.w_old[kk] * f0[i] + w.w_new[kk] * f1[i];
      }
    }
    bool df = true;
    for (std::size_t r = 0; r <= s; ++r) df = df && forcing.snapshots[r].divergence_free();
    cur.set_divergence_free(df);
  }
  return out;
}

Trajectory bilinear_B(const Trajectory& u, const Trajectory& v) {
  require_same_sampling(u, v, "bilinear form");
  Trajectory forcing = Trajectory::zeros(u.grid, u.times);
  const bool same = (&u == &v);
  parallel_for(u.size(), [&](std::size_t i) {
    forcing.snapshots[i] = same ? bilinear_forcing(u.snapshots[i], u.snapshots[i])
                                : bilinear_forcing(u.snapshots[i], v.snapshots[i]);
  });
  return duhamel_integral(forcing);
}

Trajectory heat_duhamel(const Trajectory& g) {
  validate(g);
  Trajectory projected = g;
  for (auto& s : projected.snapshots) leray_project_inplace(s);
  return duhamel_integral(projected);
}

}  // namespace bnslab
