#include "bnslab/paraproduct.hpp"

#include <cmath>

#include "bnslab/bilinear.hpp"
#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/space_time.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

// Physical-space pieces: entry 0 is S_{j_min} u, entry i > 0 is Delta_{j_min + i - 1} u,
// up to the shell that reaches the grid corners.
std::vector<PhysicalField> physical_blocks(const SpectralField& u) {
  const GridSpec& g = u.grid();
  int top = g.j_max;
  while (std::ldexp(1.0, top + 1) < std::sqrt(3.0) * g.nyquist()) ++top;
  std::vector<PhysicalField> out;
  out.push_back(fft::to_physical(lowpass(u, g.j_min)));
  for (int j = g.j_min; j <= top; ++j) out.push_back(fft::to_physical(block(u, j)));
  return out;
}

void add_product(PhysicalField& acc, const PhysicalField& a, const PhysicalField& b) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < acc.v[c].size(); ++i) acc.v[c][i] += a.v[c][i] * b.v[c][i];
}

PhysicalField zeros(const GridSpec& g) {
  PhysicalField p{g, {}};
  for (auto& c : p.v) c.assign(g.physical_size(), 0.0);
  return p;
}

void accumulate(PhysicalField& acc, const PhysicalField& x) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < acc.v[c].size(); ++i) acc.v[c][i] += x.v[c][i];
}

SpectralField finish(const PhysicalField& p) {
  SpectralField s = fft::to_spectral(p);
  dealias(s);
  return s;
}

// sum_i (sum_{k <= i - 3} a_k) * b_i, with index 0 the low-pass piece.
SpectralField paraproduct(const std::vector<PhysicalField>& a, const std::vector<PhysicalField>& b) {
  const GridSpec& g = a[0].grid;
  PhysicalField low = zeros(g), acc = zeros(g);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i >= 3) accumulate(low, a[i - 3]);
    if (i >= 3) add_product(acc, low, b[i]);
  }
  return finish(acc);
}

double kato(const Trajectory& u, double p, double T) { return kato_norm(u, p, T, 0); }

}  // namespace

SpectralField componentwise_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "product");
  const PhysicalField pf = fft::to_physical(f);
  PhysicalField acc = zeros(f.grid());
  add_product(acc, pf, fft::to_physical(g));
  return finish(acc);
}

BonyTriple bony_decompose(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "Bony decomposition");
  const auto bf = physical_blocks(f);
  const auto bg = physical_blocks(g);
  PhysicalField rem = zeros(f.grid());
  for (std::size_t i = 0; i < bf.size(); ++i)
    for (std::size_t k = (i < 2 ? 0 : i - 2); k <= i + 2 && k < bg.size(); ++k)
      add_product(rem, bf[i], bg[k]);
  return {paraproduct(bf, bg), paraproduct(bg, bf), finish(rem)};
}

void ProductExponents::validate() const {
  if (!(p1 >= 1.0 && p2 >= 1.0 && q >= 1.0)) throw ArgumentError("exponents must be >= 1");
  if (1.0 / p1 + 1.0 / p2 > 1.0) throw ArgumentError("1/p1 + 1/p2 must not exceed 1");
  if (!(s1 < 0.0)) throw ArgumentError("paraproduct estimate needs s1 < 0");
  if (!(s2 + t2 > 0.0)) throw ArgumentError("remainder estimate needs s2 + t2 > 0");
}

ProductReport product_estimate_check(const SpectralField& f, const SpectralField& g,
                                     const ProductExponents& e) {
  e.validate();
  const BonyTriple b = bony_decompose(f, g);
  const double pb = e.pbar();
  ProductReport r;
  r.paraproduct_lhs = besov_norm(b.low_high, {e.s1 + e.t1, pb, e.q});
  r.paraproduct_rhs = besov_norm(f, {e.s1, e.p1, inf}) * besov_norm(g, {e.t1, e.p2, e.q});
  r.remainder_lhs = besov_norm(b.high_high, {e.s2 + e.t2, pb, e.q});
  r.remainder_rhs = besov_norm(f, {e.s2, e.p1, inf}) * besov_norm(g, {e.t2, e.p2, e.q});
  r.paraproduct_ratio = r.paraproduct_rhs > 0.0 ? r.paraproduct_lhs / r.paraproduct_rhs : 0.0;
  r.remainder_ratio = r.remainder_rhs > 0.0 ? r.remainder_lhs / r.remainder_rhs : 0.0;
  return r;
}

KatoBilinearReport bilinear_kato_check(const Trajectory& f, const Trajectory& g, double p,
                                       double q, double r, double T) {
  const double s = 1.0 / p + 1.0 / q;
  if (!(s > 0.0 && s < 1.0 / 3.0 + 1.0 / r && 1.0 / r <= s && s <= 1.0))
    throw ArgumentError("exponents outside the bilinear Kato window");
  KatoBilinearReport rep;
  rep.lhs = kato(bilinear_B(f, g), r, T);
  rep.factor = 1.0 / s + 1.0 / (1.0 / 3.0 + 1.0 / r - s);
  rep.rhs = rep.factor * kato(f, p, T) * kato(g, q, T);
  rep.c = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

}  // namespace bnslab
