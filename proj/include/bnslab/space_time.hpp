#pragma once

#include <string>
#include <vector>

#include "bnslab/littlewood_paley.hpp"
#include "bnslab/trajectory.hpp"

namespace bnslab {

enum class NormKind { lebesgue, chemin_lerner, script, kato, kato1 };
std::string to_string(NormKind k);

// Descriptor of a space-time norm.  For `script` the Besov index supplies
// (p, q) and the regularity is s_p + 2/r at each endpoint r in {a, b}; for
// Kato norms only besov.p is used, as the Lebesgue exponent.
struct SpaceTimeNormSpec {
  NormKind kind = NormKind::chemin_lerner;
  double a = 1.0;  // rho for lebesgue / chemin_lerner
  double b = 1.0;
  BesovIndex besov;
  double t1 = 0.0;
  double t2 = 0.0;
};

// ||Delta_j u(t_i)||_{L^p} for every sample i and resolved shell j.
struct BlockNormTable {
  int j_min = 0;
  double p = 2.0;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[i][j - j_min]
};

BlockNormTable block_norm_table(const Trajectory& u, double p);

// L^rho over the samples lying in [t1, t2] (composite trapezoid on the
// values raised to rho; max when rho = inf).  The interval is snapped inward
// to the sampling grid; it must lie inside the trajectory's time range.
double time_lebesgue(const std::vector<double>& times, const std::vector<double>& values,
                     double rho, double t1, double t2);

double chemin_lerner_norm(const BlockNormTable& table, double rho, double s, double q, double t1,
                          double t2);
// ||t -> ||u(t)||_{B^s_{p,q}}||_{L^rho(t1,t2)}.
double lebesgue_besov_norm(const BlockNormTable& table, double rho, double s, double q, double t1,
                           double t2);
// max over r in {a, b} of the Chemin-Lerner norm with regularity s_p + 2/r.
double script_norm(const BlockNormTable& table, double a, double b, double q, double t1, double t2);

double chemin_lerner_norm(const Trajectory& u, const SpaceTimeNormSpec& spec);
double script_norm(const Trajectory& u, double a, double b, const BesovIndex& base, double T);
// Shorthand for the endpoint space with q = p on [0, T].
double script_norm(const Trajectory& u, double a, double b, double p, double T);

// order 0: sup t^{-s_q/2} ||u(t)||_{L^q}; order 1: sup t^{1/2 - s_q/2} ||u(t)||_{B^1_{q,inf}},
// over samples with 0 < t <= T.
double kato_norm(const Trajectory& u, double q, double T, int order);

// Dispatches on spec.kind.
double evaluate_norm(const Trajectory& u, const SpaceTimeNormSpec& spec);

struct EmbeddingChainReport {
  double lebesgue_rho1 = 0.0;  // L^{rho1} B
  double chemin_rho1 = 0.0;    // Chemin-Lerner rho1
  double chemin_rho2 = 0.0;    // Chemin-Lerner rho2
  double lebesgue_rho2 = 0.0;  // L^{rho2} B
  double holder_factor = 0.0;  // |I|^{1/rho1 - 1/rho2}
  bool holds = false;
  std::string failure;
};

// Checks, with 1e-9 relative slack:
//   chemin_rho1 <= lebesgue_rho1          (Minkowski, rho1 <= q)
//   chemin_rho1 <= holder * chemin_rho2   (Hoelder in time on each block)
//   lebesgue_rho2 <= chemin_rho2          (Minkowski, q <= rho2)
EmbeddingChainReport embedding_chain_check(const Trajectory& u, double rho1, double rho2,
                                           const BesovIndex& idx, double t1, double t2);

}  // namespace bnslab
