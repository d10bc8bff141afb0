#include "bnslab/space_time.hpp"

#include <algorithm>
#include <cmath>

#include "bnslab/errors.hpp"

namespace bnslab {
namespace {

std::pair<std::size_t, std::size_t> sample_range(const std::vector<double>& times, double t1,
                                                 double t2) {
  if (times.empty()) throw ArgumentError("empty trajectory");
  const double eps = 1e-9 * std::max(1.0, times.back());
  if (t1 < times.front() - eps || t2 > times.back() + eps || t1 > t2 + eps)
    throw ArgumentError("time interval outside the trajectory");
  std::size_t i0 = 0;
  while (i0 < times.size() && times[i0] < t1 - eps) ++i0;
  std::size_t i1 = times.size() - 1;
  while (i1 > 0 && times[i1] > t2 + eps) --i1;
  if (i0 >= times.size() || i1 < i0) throw ArgumentError("time interval contains no samples");
  return {i0, i1};
}

}  // namespace

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::lebesgue: return "lebesgue";
    case NormKind::chemin_lerner: return "chemin_lerner";
    case NormKind::script: return "script";
    case NormKind::kato: return "kato";
    case NormKind::kato1: return "kato1";
  }
  return "unknown";
}

BlockNormTable block_norm_table(const Trajectory& u, double p) {
  validate(u);
  BlockNormTable t;
  t.j_min = u.grid.j_min;
  t.p = p;
  t.times = u.times;
  t.values.reserve(u.size());
  for (const auto& s : u.snapshots) t.values.push_back(block_lp_norms(s, p));
  return t;
}

double time_lebesgue(const std::vector<double>& times, const std::vector<double>& values,
                     double rho, double t1, double t2) {
  if (!(rho >= 1.0)) throw ArgumentError("time exponent must be >= 1");
  const auto [i0, i1] = sample_range(times, t1, t2);
  double peak = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) peak = std::max(peak, std::abs(values[i]));
  if (std::isinf(rho) || peak == 0.0) return peak;
  double s = 0.0;
  for (std::size_t i = i0; i < i1; ++i) {
    const double a = std::pow(std::abs(values[i]) / peak, rho);
    const double b = std::pow(std::abs(values[i + 1]) / peak, rho);
    s += 0.5 * (times[i + 1] - times[i]) * (a + b);
  }
  return peak * std::pow(s, 1.0 / rho);
}

double chemin_lerner_norm(const BlockNormTable& table, double rho, double s, double q, double t1,
                          double t2) {
  if (table.values.empty()) return 0.0;
  const std::size_t shells = table.values.front().size();
  std::vector<double> per_block(shells), series(table.times.size());
  for (std::size_t j = 0; j < shells; ++j) {
    for (std::size_t i = 0; i < series.size(); ++i) series[i] = table.values[i][j];
    per_block[j] = time_lebesgue(table.times, series, rho, t1, t2);
  }
  return besov_combine(per_block, table.j_min, s, q);
}

double lebesgue_besov_norm(const BlockNormTable& table, double rho, double s, double q, double t1,
                           double t2) {
  std::vector<double> series;
  series.reserve(table.times.size());
  for (const auto& row : table.values) series.push_back(besov_combine(row, table.j_min, s, q));
  return time_lebesgue(table.times, series, rho, t1, t2);
}

double script_norm(const BlockNormTable& table, double a, double b, double q, double t1,
                   double t2) {
  if (!(a >= 1.0) || a > b) throw ArgumentError("script norm needs 1 <= a <= b");
  const double sp = critical_s(table.p);
  auto at = [&](double r) { return chemin_lerner_norm(table, r, sp + 2.0 / r, q, t1, t2); };
  return a == b ? at(a) : std::max(at(a), at(b));
}

double chemin_lerner_norm(const Trajectory& u, const SpaceTimeNormSpec& spec) {
  if (spec.kind != NormKind::chemin_lerner) throw ArgumentError("expected a Chemin-Lerner spec");
  const auto table = block_norm_table(u, spec.besov.p);
  return chemin_lerner_norm(table, spec.a, spec.besov.s, spec.besov.q, spec.t1, spec.t2);
}

double script_norm(const Trajectory& u, double a, double b, const BesovIndex& base, double T) {
  if (a > b) throw ArgumentError("script norm needs a <= b");
  const auto table = block_norm_table(u, base.p);
  return script_norm(table, a, b, base.q, 0.0, T);
}

double script_norm(const Trajectory& u, double a, double b, double p, double T) {
  return script_norm(u, a, b, BesovIndex{critical_s(p), p, p}, T);
}

double kato_norm(const Trajectory& u, double q, double T, int order) {
  if (!(q > 3.0)) throw ArgumentError("Kato norms need q > 3");
  if (order != 0 && order != 1) throw ArgumentError("Kato order must be 0 or 1");
  validate(u);
  const auto [i0, i1] = sample_range(u.times, 0.0, T);
  const double sq = critical_s(q);
  double sup = 0.0;
  for (std::size_t i = std::max<std::size_t>(i0, 1); i <= i1; ++i) {
    const double t = u.times[i];
    if (!(t > 0.0)) continue;
    double v;
    if (order == 0) {
      v = std::pow(t, -0.5 * sq) * lp_norm(u.snapshots[i], q);
    } else {
      const double b1 = besov_combine(block_lp_norms(u.snapshots[i], q), u.grid.j_min, 1.0, inf);
      v = std::pow(t, 0.5 - 0.5 * sq) * b1;
    }
    sup = std::max(sup, v);
  }
  return sup;
}

double evaluate_norm(const Trajectory& u, const SpaceTimeNormSpec& spec) {
  switch (spec.kind) {
    case NormKind::lebesgue: {
      const auto table = block_norm_table(u, spec.besov.p);
      return lebesgue_besov_norm(table, spec.a, spec.besov.s, spec.besov.q, spec.t1, spec.t2);
    }
    case NormKind::chemin_lerner: return chemin_lerner_norm(u, spec);
    case NormKind::script: {
      if (spec.a > spec.b) throw ArgumentError("script norm needs a <= b");
      const auto table = block_norm_table(u, spec.besov.p);
      return script_norm(table, spec.a, spec.b, spec.besov.q, spec.t1, spec.t2);
    }
    case NormKind::kato: return kato_norm(u, spec.besov.p, spec.t2, 0);
    case NormKind::kato1: return kato_norm(u, spec.besov.p, spec.t2, 1);
  }
  throw ArgumentError("unknown norm kind");
}

EmbeddingChainReport embedding_chain_check(const Trajectory& u, double rho1, double rho2,
                                           const BesovIndex& idx, double t1, double t2) {
  if (!(1.0 <= rho1 && rho1 <= idx.q && idx.q <= rho2))
    throw ArgumentError("embedding chain needs 1 <= rho1 <= q <= rho2");
  const auto table = block_norm_table(u, idx.p);
  EmbeddingChainReport r;
  r.lebesgue_rho1 = lebesgue_besov_norm(table, rho1, idx.s, idx.q, t1, t2);
  r.chemin_rho1 = chemin_lerner_norm(table, rho1, idx.s, idx.q, t1, t2);
  r.chemin_rho2 = chemin_lerner_norm(table, rho2, idx.s, idx.q, t1, t2);
  r.lebesgue_rho2 = lebesgue_besov_norm(table, rho2, idx.s, idx.q, t1, t2);
  const auto [i0, i1] = sample_range(u.times, t1, t2);
  const double length = u.times[i1] - u.times[i0];
  r.holder_factor = std::pow(length, 1.0 / rho1 - 1.0 / rho2);
  const double slack = 1.0 + 1e-9;
  r.holds = true;
  if (r.chemin_rho1 > slack * r.lebesgue_rho1) {
    r.holds = false;
    r.failure = "Chemin-Lerner rho1 exceeds Lebesgue rho1";
  } else if (r.chemin_rho1 > slack * r.holder_factor * r.chemin_rho2) {
    r.holds = false;
    r.failure = "Hoelder step violated";
  } else if (r.lebesgue_rho2 > slack * r.chemin_rho2) {
    r.holds = false;
    r.failure = "Lebesgue rho2 exceeds Chemin-Lerner rho2";
  }
  return r;
}

}  // namespace bnslab
