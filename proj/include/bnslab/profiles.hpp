#pragma once

#include <array>
#include <string>
#include <vector>

#include "bnslab/field.hpp"
#include "bnslab/solver.hpp"

namespace bnslab {

// Dyadic scale lambda = 2^m and core x_c; acts by U -> (1/lambda) U((x - x_c)/lambda).
struct ScaleCore {
  int m = 0;
  std::array<double, 3> core{0.0, 0.0, 0.0};
  double lambda() const;
};

// Applying `first` then `second` equals applying compose(first, second).
ScaleCore compose(const ScaleCore& first, const ScaleCore& second);
ScaleCore inverse(const ScaleCore& s);

// The field is returned on the torus rescaled by lambda, so the operation is
// exact in coefficient space: dyadic blocks shift by -m.
SpectralField scale_op(const ScaleCore& sc, const SpectralField& u);
// Time samples are dilated by lambda^2.
Trajectory scale_op(const ScaleCore& sc, const Trajectory& u);

// lambda_a/lambda_b + lambda_b/lambda_a + |x_a - x_b| / lambda_a at index n.
double orthogonality_gap(const std::vector<ScaleCore>& a, const std::vector<ScaleCore>& b,
                         std::size_t n);

// A sum of fields living on dyadically rescaled copies of one torus, each
// standing for a single localized copy (as on the whole space).  Level l means
// period base_period / 2^l.
struct MultiscaleField {
  GridSpec base;
  std::vector<SpectralField> terms;
};

int level_of(const GridSpec& base, const GridSpec& g);
MultiscaleField single(const SpectralField& u);
// Scales and shifts every term.
MultiscaleField scale_op(const ScaleCore& sc, const MultiscaleField& f);
MultiscaleField operator+(MultiscaleField a, const MultiscaleField& b);
// Terms on a common level are merged; zero terms are dropped.
MultiscaleField normalized(const MultiscaleField& f);
MultiscaleField scaled(double a, MultiscaleField f);

// Periodic-copies embedding of every term on the torus `target`, whose period
// must be a dyadic multiple of each term's period; throws ArgumentError when a
// mode leaves the target grid.
SpectralField materialize(const MultiscaleField& f, const GridSpec& target);

// One-copy integrals int |Delta_j f|^p for every shell touched by some term,
// reported with their shell index.  Two overlapping levels are combined on
// the coarser torus with the interaction averaged over the 2^{3d} copies; three
// or more overlapping levels raise ArgumentError.
struct ShellIntegrals {
  int j_first = 0;
  std::vector<double> values;
};
ShellIntegrals shell_integrals(const MultiscaleField& f, double p);
// ||f||_{B^{s_p}_{p,p}}^p.
double critical_norm_pow(const MultiscaleField& f, double p);
// ||f||_{B^{s}_{p,q}} from one-copy shell norms.
double besov_norm(const MultiscaleField& f, const BesovIndex& idx);

struct ProfileSet {
  std::vector<SpectralField> profiles;
  std::vector<std::vector<ScaleCore>> schedules;  // schedules[j][n]
  std::vector<MultiscaleField> remainders;        // remainders[n], for all profiles
  bool incomplete = false;
  std::size_t length() const { return remainders.size(); }
};

// psi_n^J = psi_n + sum_{j >= J} Lambda_{j,n} phi_j.
MultiscaleField remainder_at(const ProfileSet& ps, std::size_t n, std::size_t J);
// f_n = sum_{j < J} Lambda_{j,n} phi_j + psi_n^J.
MultiscaleField synthesize(const ProfileSet& ps, std::size_t n, std::size_t J);

struct ExtractionOptions {
  std::size_t max_profiles = 4;
  double threshold = 1e-3;  // on the tail max of ||residual||_{B^{s_q}_{q,q}}
  double q = 6.0;
  double min_gap = 16.0;
};

// Greedy extraction: locate the dominant (shell, point) of 2^{-j}|Delta_j f|,
// unscale, average the anchor-level part over the second half of the
// sequence, subtract, repeat.  Profiles are returned in decreasing norm.
ProfileSet extract_profiles(const std::vector<MultiscaleField>& seq,
                            const ExtractionOptions& opt = {});

struct PythagoreanRow {
  std::size_t n = 0;
  std::size_t J = 0;
  double total = 0.0;       // ||f_n||^p
  double parts = 0.0;       // sum ||phi_j||^p + ||psi||^p
  double epsilon = 0.0;     // |total - parts|
  double relative = 0.0;    // epsilon / total
  double cross_term_max = 0.0;
};

// Pythagorean defect of ||.||_{B^{s_p}_{p,p}}^p: ||seq[n]|| against the
// first J profiles and psi_n^J.  The cross term is evaluated between every
// pair of the first J placed profiles when p is an integer.
std::vector<PythagoreanRow> pythagorean_check(const ProfileSet& ps,
                                              const std::vector<MultiscaleField>& seq,
                                              const std::vector<std::size_t>& n_list,
                                              std::size_t J, double p);

// max over r = 1..p-1 of sum_j 2^{j p s_p} int |Delta_j a|^r |Delta_j b|^{p-r}
// (one-copy), for integer p >= 2.
double cross_term(const MultiscaleField& a, const MultiscaleField& b, int p);

// Evolved decomposition on one torus with periodic copies: profiles given as
// fields already placed at index n (Lambda_{j,n} phi_j) plus a remainder.
// r = NS(sum + psi) - sum_j NS(placed_j) - e^{t Delta} psi.
struct EvolvedReport {
  double r_norm = 0.0;             // L^{2:inf}_q over the window
  std::vector<double> profile_norms;  // L^{2:inf}_q of each evolved profile
  double remainder_heat_norm = 0.0;   // L^{1:inf}_q of e^{t Delta} psi
  double remainder_data_norm = 0.0;   // B^{s_q}_{q,q} of psi
  bool converged = true;
  std::string failure;
};
EvolvedReport evolve_decomposition(const std::vector<SpectralField>& placed,
                                   const SpectralField& remainder, const SolverConfig& cfg,
                                   double q);
// Same, with the first J profiles and psi_n^J of `ps` materialized on `target`.
EvolvedReport evolve_decomposition(const ProfileSet& ps, const SolverConfig& cfg, std::size_t n,
                                   std::size_t J, const GridSpec& target, double q);

}  // namespace bnslab
