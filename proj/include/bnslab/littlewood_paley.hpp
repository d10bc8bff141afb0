#pragma once

#include <limits>
#include <vector>

#include "bnslab/field.hpp"

namespace bnslab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Smooth radial low-pass profile: 1 on [0,1], 0 on [2,inf), and
//   e(2-r) / (e(2-r) + e(r-1)),  e(t) = exp(-1/t),
// in between.
double cutoff(double r);

// Multiplier of the dyadic block j at |xi|: cutoff(|xi|/2^{j+1}) - cutoff(|xi|/2^j).
// Nonzero only for 2^j < |xi| < 2^{j+2}.
double block_weight(int j, double abs_xi);

// Multiplier of the low-pass S_j at |xi|.
double lowpass_weight(int j, double abs_xi);

struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
};

// Critical regularity -1 + 3/p.
inline double critical_s(double p) { return -1.0 + 3.0 / p; }
inline BesovIndex critical_index(double p, double q) { return {critical_s(p), p, q}; }

struct LPBlockSet {
  GridSpec grid;
  std::vector<SpectralField> blocks;  // blocks[j - grid.j_min]
  const SpectralField& at(int j) const { return blocks.at(j - grid.j_min); }
};

SpectralField block(const SpectralField& u, int j);
SpectralField lowpass(const SpectralField& u, int j);
LPBlockSet lp_decompose(const SpectralField& u);
SpectralField reconstruct(const LPBlockSet& b);

// Spatial L^p of the Euclidean magnitude by the rectangle rule; p = inf is the
// grid maximum.
double lp_norm(const PhysicalField& f, double p);
double lp_norm(const SpectralField& u, double p);

// ||Delta_j u||_{L^p} for j in [j_min, j_max].
std::vector<double> block_lp_norms(const SpectralField& u, double p);

// l^q combination of 2^{js} * norms[j - j_min].
double besov_combine(const std::vector<double>& block_norms, int j_min, double s, double q);

double besov_norm(const SpectralField& u, const BesovIndex& idx);

struct BernsteinReport {
  double source_norm = 0.0;  // B^s_{p1,q}
  double target_norm = 0.0;  // B^{s-3(1/p1-1/p2)}_{p2,q}
  double ratio = 0.0;        // target / source, 0 for the zero field
};

BernsteinReport bernstein_check(const SpectralField& u, double s, double p1, double p2, double q);

}  // namespace bnslab
