#include "bnslab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bnslab/bilinear.hpp"
#include "bnslab/errors.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/space_time.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

double script_1_inf(const Trajectory& u, double p) {
  return script_norm(block_norm_table(u, p), 1.0, inf, p, 0.0, u.final_time());
}

struct Increment {
  double relative = 0.0;
  double size = 0.0;  // of the new iterate
};

Increment relative_increment(const Trajectory& next, const Trajectory& prev, double p) {
  const double diff = script_1_inf(next - prev, p);
  const double size = script_1_inf(next, p);
  if (size == 0.0) return {diff == 0.0 ? 0.0 : inf, size};
  return {diff / size, size};
}

// Iterates this far above the linear part have left the contraction regime;
// the relative increment alone saturates near 1 and would not notice.
constexpr double kRunaway = 1e8;

double max_divergence(const Trajectory& u) {
  double m = 0.0;
  for (const auto& s : u.snapshots) m = std::max(m, divergence_defect(s));
  return m;
}

void fill_monitoring(const Trajectory& u, const BesovIndex& idx, const SolverConfig& cfg,
                     BlowupReport& r) {
  const auto table = block_norm_table(u, idx.p);
  const double sp = critical_s(idx.p);
  r.times = u.times;
  r.besov_norms.clear();
  r.running_norms.clear();
  for (std::size_t i = 0; i < u.size(); ++i) {
    r.besov_norms.push_back(besov_combine(table.values[i], table.j_min, sp, idx.q));
    r.running_norms.push_back(
        i == 0 ? 0.0 : script_norm(table, 1.0, inf, idx.q, 0.0, u.times[i]));
  }
  if (!r.converged) {
    r.classification = Classification::picard_diverged;
    return;
  }
  const double initial = r.besov_norms.front();
  const double peak = *std::max_element(r.besov_norms.begin(), r.besov_norms.end());
  const bool decays = r.besov_norms.back() < initial || initial == 0.0;
  const bool grows = initial > 0.0 && peak >= cfg.growth_threshold * initial;
  r.classification = (decays && !grows) ? Classification::decaying : Classification::growing;
}

}  // namespace

std::vector<double> SolverConfig::times() const { return uniform_times(final_time(), n_steps); }

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("solver dt must be positive");
  if (n_steps < 1) throw ConfigError("solver needs at least one step");
  if (!(picard_tol > 0.0)) throw ConfigError("picard_tol must be positive");
  if (max_picard_iters < 1) throw ConfigError("max_picard_iters must be positive");
  if (dealias != "two_thirds") throw ConfigError("only the two_thirds dealiasing rule is supported");
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::decaying: return "decaying";
    case Classification::growing: return "growing";
    case Classification::picard_diverged: return "picard_diverged";
  }
  return "unknown";
}

SolveResult picard_solve(const SpectralField& u0, const SolverConfig& cfg, const BesovIndex& idx) {
  cfg.validate();
  const Trajectory linear = heat_trajectory(u0, cfg.times());
  SolveResult res{linear, {}};
  BlowupReport& r = res.report;
  r.max_divergence_defect = max_divergence(linear);
  int rising = 0;
  const double linear_size = script_1_inf(linear, idx.p);
  for (int k = 0; k < cfg.max_picard_iters; ++k) {
    Trajectory next = linear + bilinear_B(res.u, res.u);
    const auto [inc, size] = relative_increment(next, res.u, idx.p);
    r.picard_residuals.push_back(inc);
    r.iterations = k + 1;
    r.max_divergence_defect = std::max(r.max_divergence_defect, max_divergence(next));
    if (!std::isfinite(inc)) break;
    res.u = std::move(next);
    if (inc < cfg.picard_tol) {
      r.converged = true;
      break;
    }
    rising = (k > 0 && inc > r.picard_residuals[k - 1]) ? rising + 1 : 0;
    if (rising >= 4 || !(size <= kRunaway * linear_size)) break;
  }
  fill_monitoring(res.u, idx, cfg, r);
  return res;
}

SpectralField scaling_transform(const SpectralField& u0, int m) {
  try {
    return change_scale(u0, -m, std::ldexp(1.0, m));
  } catch (const ConfigError& e) {
    throw ArgumentError(std::string("rescaled grid invalid: ") + e.what());
  }
}

Trajectory scaling_transform(const Trajectory& u, int m) {
  Trajectory out{u.grid.rescaled(m), {}, {}};
  const double lambda2 = std::ldexp(1.0, 2 * m);
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.times.push_back(u.times[i] / lambda2);
    out.snapshots.push_back(scaling_transform(u.snapshots[i], m));
  }
  return out;
}

SpectralField canonical_datum(const GridSpec& g, double p, std::uint64_t seed) {
  SpectralField u = random_bandlimited(g, 1.0, 4.0, 1.0, seed);
  u *= 1.0 / besov_norm(u, critical_index(p, p));
  return u;
}

double calibrate_c0(const GridSpec& g, double p, SolverConfig cfg, std::uint64_t seed,
                    int bisection_steps) {
  const SpectralField base = canonical_datum(g, p, seed);
  const BesovIndex idx = critical_index(p, p);
  auto ok = [&](double amp) {
    const auto res = picard_solve(amp * base, cfg, idx);
    return res.report.converged && res.report.besov_norms.back() < res.report.besov_norms.front();
  };
  double lo = 0.0, hi = 1.0;
  while (ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return lo;
  }
  for (int i = 0; i < bisection_steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

PerturbedResult solve_perturbed(const SpectralField& w0, const Trajectory& v1, const Trajectory& v2,
                                const Trajectory& f1, const Trajectory& f2, const SolverConfig& cfg,
                                double p, bool linear) {
  cfg.validate();
  require_same_sampling(v1, v2, "perturbed solver drift");
  require_same_sampling(v1, f1, "perturbed solver forcing");
  require_same_sampling(v1, f2, "perturbed solver forcing");
  require_same_grid(v1.grid, w0.grid(), "perturbed solver data");
  const Trajectory drift = v1 + v2;
  const Trajectory source = heat_trajectory(w0, v1.times) + heat_duhamel(f1 + f2);
  PerturbedResult res{source, false, 0, {}};
  const double source_size = script_1_inf(source, p);
  for (int k = 0; k < cfg.max_picard_iters; ++k) {
    Trajectory next = source;
    next.axpy(2.0, bilinear_B(drift, res.w));
    if (!linear) next += bilinear_B(res.w, res.w);
    const auto [inc, size] = relative_increment(next, res.w, p);
    res.residuals.push_back(inc);
    res.iterations = k + 1;
    if (!std::isfinite(inc)) break;
    res.w = std::move(next);
    if (inc < cfg.picard_tol) {
      res.converged = true;
      break;
    }
    if (!(size <= kRunaway * source_size)) break;
  }
  return res;
}

std::vector<double> energy_balance_defects(const Trajectory& u) {
  validate(u);
  const GridSpec& g = u.grid;
  const auto& k2 = mode_k2(g);
  const double unit2 = g.unit() * g.unit();
  std::vector<double> energy, dissipation;
  for (const auto& s : u.snapshots) {
    energy.push_back(0.5 * inner_product(s, s));
    SpectralField grad_weighted = s;
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < k2.size(); ++i)
        grad_weighted.component(a)[i] *= std::sqrt(unit2 * k2[i]);
    dissipation.push_back(inner_product(grad_weighted, grad_weighted));
  }
  std::vector<double> defects;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double h = u.times[i + 1] - u.times[i];
    const double lost = 0.5 * h * (dissipation[i] + dissipation[i + 1]);
    const double change = energy[i + 1] - energy[i];
    defects.push_back(lost > 0.0 ? std::abs(change + lost) / lost : std::abs(change));
  }
  return defects;
}

}  // namespace bnslab
