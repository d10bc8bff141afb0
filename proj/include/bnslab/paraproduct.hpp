#pragma once

#include <string>

#include "bnslab/field.hpp"
#include "bnslab/trajectory.hpp"

namespace bnslab {

// Bony split of the componentwise product (f_a g_a)_a, every piece dealiased:
//   low_high  = T_f g = sum_j S_{j-2} f * Delta_j g
//   high_low  = T_g f
//   high_high = R(f, g) = sum_{|j - j'| <= 2} Delta_j f * Delta_j' g
// (S_{j-2} leaves out the shells j-2, j-1, so the diagonal band has width 2)
// The blocks run over the mean part S_{j_min} and every shell up to the one
// covering the grid corners, so the three pieces telescope to the product.
struct BonyTriple {
  SpectralField low_high;
  SpectralField high_low;
  SpectralField high_high;
};

BonyTriple bony_decompose(const SpectralField& f, const SpectralField& g);
// Dealiased componentwise product.
SpectralField componentwise_product(const SpectralField& f, const SpectralField& g);

// ||T_f g||_{B^{s1+t1}_{pbar,q}} <= C ||f||_{B^{s1}_{p1,inf}} ||g||_{B^{t1}_{p2,q}}   (s1 < 0)
// ||R(f,g)||_{B^{s2+t2}_{pbar,q}} <= C ||f||_{B^{s2}_{p1,inf}} ||g||_{B^{t2}_{p2,q}}  (s2 + t2 > 0)
// with 1/pbar = 1/p1 + 1/p2 <= 1.
struct ProductExponents {
  double s1 = -0.5, t1 = 1.0;
  double s2 = -0.5, t2 = 1.0;
  double p1 = 10.0, p2 = 10.0, q = 2.0;
  double pbar() const { return 1.0 / (1.0 / p1 + 1.0 / p2); }
  void validate() const;
};

struct ProductReport {
  double paraproduct_lhs = 0.0, paraproduct_rhs = 0.0, paraproduct_ratio = 0.0;
  double remainder_lhs = 0.0, remainder_rhs = 0.0, remainder_ratio = 0.0;
};

ProductReport product_estimate_check(const SpectralField& f, const SpectralField& g,
                                     const ProductExponents& e);

// ||B(f, g)||_{K_r(T)} against
//   [(1/p + 1/q)^{-1} + (1/3 + 1/r - 1/p - 1/q)^{-1}] ||f||_{K_p(T)} ||g||_{K_q(T)}.
struct KatoBilinearReport {
  double lhs = 0.0;
  double factor = 0.0;  // the bracket
  double rhs = 0.0;     // factor * ||f|| * ||g||
  double c = 0.0;       // lhs / rhs, 0 when rhs = 0
};

KatoBilinearReport bilinear_kato_check(const Trajectory& f, const Trajectory& g, double p,
                                       double q, double r, double T);

}  // namespace bnslab
