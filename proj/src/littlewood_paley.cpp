#include "bnslab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"

namespace bnslab {
namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

SpectralField filtered(const SpectralField& u, const auto& weight_of_abs_xi) {
  const GridSpec& g = u.grid();
  const auto& k2 = mode_k2(g);
  SpectralField out(g);
  const double unit = g.unit();
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double w = weight_of_abs_xi(unit * std::sqrt(k2[i]));
    if (w == 0.0) continue;
    for (int a = 0; a < 3; ++a) out.component(a)[i] = w * u.component(a)[i];
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

// Block multipliers per stored mode, cached per (n, period, j).
const std::vector<double>& block_weights(const GridSpec& g, int j) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, int>, std::unique_ptr<std::vector<double>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{g.n, g.period, j}];
  if (!slot) {
    const auto& k2 = mode_k2(g);
    slot = std::make_unique<std::vector<double>>(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i)
      (*slot)[i] = block_weight(j, g.unit() * std::sqrt(k2[i]));
  }
  return *slot;
}

}  // namespace

double cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = bump(2.0 - r), b = bump(r - 1.0);
  return a / (a + b);
}

double block_weight(int j, double abs_xi) {
  return cutoff(std::ldexp(abs_xi, -(j + 1))) - cutoff(std::ldexp(abs_xi, -j));
}

double lowpass_weight(int j, double abs_xi) { return cutoff(std::ldexp(abs_xi, -j)); }

SpectralField block(const SpectralField& u, int j) {
  const auto& w = block_weights(u.grid(), j);
  SpectralField out(u.grid());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    for (int a = 0; a < 3; ++a) out.component(a)[i] = w[i] * u.component(a)[i];
  }
  out.set_divergence_free(u.divergence_free());
  return out;
}

SpectralField lowpass(const SpectralField& u, int j) {
  return filtered(u, [j](double x) { return lowpass_weight(j, x); });
}

LPBlockSet lp_decompose(const SpectralField& u) {
  const GridSpec& g = u.grid();
  if (g.shell_count() < 4) throw ConfigError("fewer than four resolved dyadic shells");
  LPBlockSet set{g, {}};
  for (int j = g.j_min; j <= g.j_max; ++j) set.blocks.push_back(block(u, j));
  return set;
}

SpectralField reconstruct(const LPBlockSet& b) {
  SpectralField sum(b.grid);
  for (const auto& blk : b.blocks) sum += blk;
  return sum;
}

double lp_norm(const PhysicalField& f, double p) {
  if (!(p >= 1.0)) throw ArgumentError("Lebesgue exponent must be >= 1");
  const std::size_t n = f.grid.physical_size();
  const double* x = f.v[0].data();
  const double* y = f.v[1].data();
  const double* z = f.v[2].data();
  // Scaling by the largest component keeps tiny fields from underflowing and
  // large exponents from overflowing.
  double top = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    top = std::max({top, std::abs(x[i]), std::abs(y[i]), std::abs(z[i])});
    finite = finite && std::isfinite(x[i] + y[i] + z[i]);
  }
  if (!finite) return std::numeric_limits<double>::quiet_NaN();
  if (top == 0.0) return 0.0;
  const double inv = 1.0 / top;
  auto mag2 = [&](std::size_t i) {
    const double a = x[i] * inv, b = y[i] * inv, c = z[i] * inv;
    return a * a + b * b + c * c;
  };
  double peak2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak2 = std::max(peak2, mag2(i));
  if (std::isinf(p)) return top * std::sqrt(peak2);
  const double half = 0.5 * p, inv_peak2 = 1.0 / peak2;
  double s = 0.0;
  if (half == std::floor(half) && half <= 64.0) {
    // Repeated squaring with the bit loop outside, so the inner loops vectorize.
    thread_local std::vector<double> base, acc;
    base.resize(n);
    acc.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) base[i] = mag2(i) * inv_peak2;
    for (auto e = static_cast<unsigned>(half); e != 0; e >>= 1) {
      if (e & 1u)
        for (std::size_t i = 0; i < n; ++i) acc[i] *= base[i];
      if (e > 1)
        for (std::size_t i = 0; i < n; ++i) base[i] *= base[i];
    }
    for (std::size_t i = 0; i < n; ++i) s += acc[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) s += std::pow(mag2(i) * inv_peak2, half);
  }
  return top * std::sqrt(peak2) * std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double lp_norm(const SpectralField& u, double p) { return lp_norm(fft::to_physical(u), p); }

std::vector<double> block_lp_norms(const SpectralField& u, double p) {
  const GridSpec& g = u.grid();
  std::vector<double> out;
  out.reserve(g.shell_count());
  for (int j = g.j_min; j <= g.j_max; ++j) {
    const SpectralField b = block(u, j);
    bool empty = true;
    for (int a = 0; a < 3 && empty; ++a)
      empty = std::all_of(b.component(a).begin(), b.component(a).end(),
                          [](const cplx& c) { return c == cplx{}; });
    out.push_back(empty ? 0.0 : lp_norm(b, p));
  }
  return out;
}

double besov_combine(const std::vector<double>& block_norms, int j_min, double s, double q) {
  if (!(q >= 1.0)) throw ArgumentError("summation exponent must be >= 1");
  std::vector<double> terms;
  terms.reserve(block_norms.size());
  for (std::size_t i = 0; i < block_norms.size(); ++i)
    terms.push_back(std::exp2(s * (j_min + static_cast<int>(i))) * block_norms[i]);
  const double peak = terms.empty() ? 0.0 : *std::max_element(terms.begin(), terms.end());
  if (std::isinf(q) || peak == 0.0) return peak;
  double sum = 0.0;
  for (double t : terms) sum += std::pow(t / peak, q);
  return peak * std::pow(sum, 1.0 / q);
}

double besov_norm(const SpectralField& u, const BesovIndex& idx) {
  if (!(idx.p >= 1.0) || !(idx.q >= 1.0)) throw ArgumentError("Besov exponents must be >= 1");
  return besov_combine(block_lp_norms(u, idx.p), u.grid().j_min, idx.s, idx.q);
}

BernsteinReport bernstein_check(const SpectralField& u, double s, double p1, double p2, double q) {
  if (p1 > p2) throw ArgumentError("Bernstein check requires p1 <= p2");
  BernsteinReport r;
  r.source_norm = besov_norm(u, {s, p1, q});
  r.target_norm = besov_norm(u, {s - 3.0 * (1.0 / p1 - 1.0 / p2), p2, q});
  r.ratio = r.source_norm > 0.0 ? r.target_norm / r.source_norm : 0.0;
  return r;
}

}  // namespace bnslab
