#include "bnslab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bnslab/errors.hpp"
#include "bnslab/fft.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/space_time.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

// Terms whose coefficients are below this fraction of the merged inputs are
// treated as cancelled.
constexpr double kCancelled = 1e-12;

bool is_zero(const SpectralField& u) { return max_abs_coefficient(u) == 0.0; }

// Adds the periodic-copies image of `u` (whose period is target.period / 2^d)
// into `out`.  Returns false when a mode does not fit.
bool embed_into(const SpectralField& u, int d, SpectralField& out) {
  const GridSpec& g = u.grid();
  const GridSpec& t = out.grid();
  const int f = 1 << d;
  bool fits = true;
  for_each_mode(g, [&](const Mode& m) {
    if (!fits) return;
    bool nonzero = false;
    for (int a = 0; a < 3; ++a) nonzero = nonzero || u.component(a)[m.index] != cplx{};
    if (!nonzero) return;
    if (is_nyquist(t, f * m.kx, f * m.ky, f * m.kz)) {
      fits = false;
      return;
    }
    const std::size_t i = mode_index(t, f * m.kx, f * m.ky, f * m.kz);
    for (int a = 0; a < 3; ++a) out.component(a)[i] += u.component(a)[m.index];
  });
  return fits;
}

struct CommonTorus {
  SpectralField coarse;
  SpectralField fine;
  int d = 0;
};

// Puts `a` and `b` on the torus of the coarser one, refined until both fit.
CommonTorus common_torus(const GridSpec& base, const SpectralField& a, const SpectralField& b) {
  const bool a_coarse = level_of(base, a.grid()) <= level_of(base, b.grid());
  const SpectralField& c = a_coarse ? a : b;
  const SpectralField& f = a_coarse ? b : a;
  const int d = level_of(base, f.grid()) - level_of(base, c.grid());
  for (int r = 0; r <= 4; ++r) {
    SpectralField cc = refine(c, r);
    SpectralField ff(cc.grid());
    if (embed_into(f, d, ff)) {
      if (a_coarse) return {std::move(cc), std::move(ff), d};
      return {std::move(ff), std::move(cc), d};
    }
  }
  throw ArgumentError("overlapping levels too far apart to share a grid");
}

double pow_integral(const SpectralField& u, double p) {
  const double v = lp_norm(u, p);
  return std::pow(v, p);
}

struct Peak {
  double value = -1.0;
  int shell = 0;
  int level = 0;
  std::size_t term = 0;
  std::array<double, 3> at{};
};

Peak locate_peak(const MultiscaleField& f) {
  Peak best;
  for (std::size_t t = 0; t < f.terms.size(); ++t) {
    const SpectralField& u = f.terms[t];
    const GridSpec& g = u.grid();
    for (int j = g.j_min; j <= g.j_max; ++j) {
      const PhysicalField b = fft::to_physical(block(u, j));
      const double w = std::ldexp(1.0, -j);
      for (std::size_t i = 0; i < g.physical_size(); ++i) {
        for (int a = 0; a < 3; ++a) {
          const double v = w * std::abs(b.v[a][i]);
          if (v > best.value * (1.0 + 1e-12)) {
            const std::size_t n = g.n;
            best = {v, j, level_of(f.base, g), t,
                    {g.spacing() * double(i / (n * n)), g.spacing() * double((i / n) % n),
                     g.spacing() * double(i % n)}};
          }
        }
      }
    }
  }
  return best;
}

MultiscaleField subtract_cancelling(const MultiscaleField& a, const SpectralField& b) {
  MultiscaleField out{a.base, {}};
  bool merged = false;
  for (const auto& t : a.terms) {
    if (!merged && t.grid() == b.grid()) {
      SpectralField d = t - b;
      const double scale = std::max(max_abs_coefficient(t), max_abs_coefficient(b));
      if (max_abs_coefficient(d) > kCancelled * scale) out.terms.push_back(std::move(d));
      merged = true;
    } else {
      out.terms.push_back(t);
    }
  }
  if (!merged) out.terms.push_back(-1.0 * b);
  return out;
}

}  // namespace

double ScaleCore::lambda() const { return std::ldexp(1.0, m); }

ScaleCore compose(const ScaleCore& first, const ScaleCore& second) {
  ScaleCore r;
  r.m = first.m + second.m;
  for (int a = 0; a < 3; ++a) r.core[a] = second.core[a] + second.lambda() * first.core[a];
  return r;
}

ScaleCore inverse(const ScaleCore& s) {
  ScaleCore r;
  r.m = -s.m;
  for (int a = 0; a < 3; ++a) r.core[a] = -s.core[a] / s.lambda();
  return r;
}

SpectralField scale_op(const ScaleCore& sc, const SpectralField& u) {
  SpectralField out;
  try {
    out = change_scale(u, sc.m, 1.0 / sc.lambda());
  } catch (const ConfigError& e) {
    throw ArgumentError(std::string("scaled field not resolvable: ") + e.what());
  }
  if (sc.core != std::array<double, 3>{0.0, 0.0, 0.0}) out = translate(out, sc.core);
  return out;
}

Trajectory scale_op(const ScaleCore& sc, const Trajectory& u) {
  Trajectory out{u.grid.rescaled(-sc.m), {}, {}};
  const double l2 = sc.lambda() * sc.lambda();
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.times.push_back(l2 * u.times[i]);
    out.snapshots.push_back(scale_op(sc, u.snapshots[i]));
  }
  return out;
}

double orthogonality_gap(const std::vector<ScaleCore>& a, const std::vector<ScaleCore>& b,
                         std::size_t n) {
  const ScaleCore& x = a.at(n);
  const ScaleCore& y = b.at(n);
  const double ratio = x.lambda() / y.lambda();
  double dist2 = 0.0;
  for (int i = 0; i < 3; ++i) dist2 += (x.core[i] - y.core[i]) * (x.core[i] - y.core[i]);
  return ratio + 1.0 / ratio + std::sqrt(dist2) / x.lambda();
}

int level_of(const GridSpec& base, const GridSpec& g) {
  const double l = std::log2(base.period / g.period);
  const int r = static_cast<int>(std::lround(l));
  if (std::abs(l - r) > 1e-9) throw ArgumentError("term period is not a dyadic rescaling of the base");
  return r;
}

MultiscaleField single(const SpectralField& u) { return {u.grid(), {u}}; }

MultiscaleField scale_op(const ScaleCore& sc, const MultiscaleField& f) {
  MultiscaleField out{f.base, {}};
  for (const auto& t : f.terms) out.terms.push_back(scale_op(sc, t));
  return out;
}

MultiscaleField operator+(MultiscaleField a, const MultiscaleField& b) {
  for (const auto& t : b.terms) {
    level_of(a.base, t.grid());
    a.terms.push_back(t);
  }
  return a;
}

MultiscaleField normalized(const MultiscaleField& f) {
  MultiscaleField out{f.base, {}};
  for (const auto& t : f.terms) {
    auto it = std::find_if(out.terms.begin(), out.terms.end(),
                           [&](const SpectralField& o) { return o.grid() == t.grid(); });
    if (it == out.terms.end()) {
      out.terms.push_back(t);
    } else {
      *it += t;
    }
  }
  std::erase_if(out.terms, [](const SpectralField& t) { return is_zero(t); });
  std::sort(out.terms.begin(), out.terms.end(), [&](const SpectralField& a, const SpectralField& b) {
    return level_of(f.base, a.grid()) < level_of(f.base, b.grid());
  });
  return out;
}

MultiscaleField scaled(double a, MultiscaleField f) {
  for (auto& t : f.terms) t *= a;
  return f;
}

SpectralField materialize(const MultiscaleField& f, const GridSpec& target) {
  SpectralField out(target);
  bool df = true;
  for (const auto& t : f.terms) {
    const int d = level_of(target, t.grid());
    if (d < 0) throw ArgumentError("term is coarser than the target torus");
    if (!embed_into(t, d, out)) throw ArgumentError("term does not fit on the target grid");
    df = df && t.divergence_free();
  }
  out.set_divergence_free(df);
  return out;
}

ShellIntegrals shell_integrals(const MultiscaleField& input, double p) {
  if (!(p >= 1.0) || std::isinf(p))
    throw ArgumentError("one-copy shell integrals need a finite exponent");
  const MultiscaleField f = normalized(input);
  // shell -> list of (term, block)
  std::map<int, std::vector<std::pair<std::size_t, SpectralField>>> shells;
  for (std::size_t t = 0; t < f.terms.size(); ++t) {
    const GridSpec& g = f.terms[t].grid();
    for (int j = g.j_min; j <= g.j_max; ++j) {
      SpectralField b = block(f.terms[t], j);
      if (!is_zero(b)) shells[j].emplace_back(t, std::move(b));
    }
  }
  ShellIntegrals out;
  if (shells.empty()) return out;
  out.j_first = shells.begin()->first;
  out.values.assign(shells.rbegin()->first - out.j_first + 1, 0.0);
  for (const auto& [j, parts] : shells) {
    double v = 0.0;
    if (parts.size() == 1) {
      v = pow_integral(parts[0].second, p);
    } else if (parts.size() == 2) {
      const CommonTorus c = common_torus(f.base, parts[0].second, parts[1].second);
      const double copies = std::ldexp(1.0, 3 * c.d);
      const double coarse = pow_integral(c.coarse, p);
      const double sum = pow_integral(c.coarse + c.fine, p);
      v = coarse * (1.0 - 1.0 / copies) + sum / copies;
    } else {
      throw ArgumentError("more than two scales overlap in shell " + std::to_string(j));
    }
    out.values[j - out.j_first] = v;
  }
  return out;
}

double critical_norm_pow(const MultiscaleField& f, double p) {
  const ShellIntegrals s = shell_integrals(f, p);
  const double sp = critical_s(p);
  double total = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    total += std::pow(2.0, (s.j_first + int(i)) * sp * p) * s.values[i];
  return total;
}

double besov_norm(const MultiscaleField& f, const BesovIndex& idx) {
  const ShellIntegrals s = shell_integrals(f, idx.p);
  if (s.values.empty()) return 0.0;
  std::vector<double> norms;
  for (double v : s.values) norms.push_back(std::pow(v, 1.0 / idx.p));
  return besov_combine(norms, s.j_first, idx.s, idx.q);
}

MultiscaleField remainder_at(const ProfileSet& ps, std::size_t n, std::size_t J) {
  MultiscaleField out = ps.remainders.at(n);
  for (std::size_t j = J; j < ps.profiles.size(); ++j)
    out.terms.push_back(scale_op(ps.schedules[j].at(n), ps.profiles[j]));
  return normalized(out);
}

MultiscaleField synthesize(const ProfileSet& ps, std::size_t n, std::size_t J) {
  if (J > ps.profiles.size()) throw ArgumentError("J exceeds the number of profiles");
  MultiscaleField out = remainder_at(ps, n, J);
  for (std::size_t j = 0; j < J; ++j)
    out.terms.push_back(scale_op(ps.schedules[j].at(n), ps.profiles[j]));
  return normalized(out);
}

ProfileSet extract_profiles(const std::vector<MultiscaleField>& seq, const ExtractionOptions& opt) {
  if (seq.empty()) throw ArgumentError("profile extraction needs a nonempty sequence");
  const std::size_t N = seq.size();
  const std::size_t n0 = N / 2;
  const BesovIndex residual_index = critical_index(opt.q, opt.q);
  ProfileSet ps;
  std::vector<MultiscaleField> residual;
  for (const auto& f : seq) residual.push_back(normalized(f));
  std::vector<double> profile_norms;
  std::vector<std::vector<ScaleCore>> placements;
  while (true) {
    double tail = 0.0;
    for (std::size_t n = n0; n < N; ++n) tail = std::max(tail, besov_norm(residual[n], residual_index));
    if (tail < opt.threshold) break;
    if (ps.profiles.size() >= opt.max_profiles) {
      ps.incomplete = true;
      break;
    }
    std::vector<Peak> peaks;
    for (const auto& r : residual) peaks.push_back(locate_peak(r));
    const Peak& anchor = peaks[n0];
    std::vector<ScaleCore> schedule(N);
    for (std::size_t n = 0; n < N; ++n) {
      schedule[n].m = anchor.shell - peaks[n].shell;
      const double l = schedule[n].lambda();
      for (int a = 0; a < 3; ++a) schedule[n].core[a] = peaks[n].at[a] - l * anchor.at[a];
    }
    SpectralField candidate;
    std::size_t count = 0;
    for (std::size_t n = n0; n < N; ++n) {
      const MultiscaleField back = scale_op(inverse(schedule[n]), residual[n]);
      for (const auto& t : back.terms) {
        if (level_of(back.base, t.grid()) != anchor.level) continue;
        if (count == 0) {
          candidate = t;
        } else {
          candidate += t;
        }
        ++count;
      }
    }
    candidate *= 1.0 / double(count);
    // Schedules are relative to each profile's anchor; separation is judged on
    // absolute placements (peak shell and location).
    std::vector<ScaleCore> placement(N);
    for (std::size_t n = 0; n < N; ++n) placement[n] = {-peaks[n].shell, peaks[n].at};
    bool orthogonal = true;
    for (const auto& s : placements)
      orthogonal = orthogonal && orthogonality_gap(placement, s, N - 1) >= opt.min_gap;
    if (!orthogonal) {
      ps.incomplete = true;
      break;
    }
    for (std::size_t n = 0; n < N; ++n)
      residual[n] = subtract_cancelling(residual[n], scale_op(schedule[n], candidate));
    profile_norms.push_back(besov_norm(single(candidate), residual_index));
    ps.profiles.push_back(std::move(candidate));
    ps.schedules.push_back(std::move(schedule));
    placements.push_back(std::move(placement));
  }
  ps.remainders = std::move(residual);
  std::vector<std::size_t> order(ps.profiles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return profile_norms[a] > profile_norms[b]; });
  ProfileSet sorted{{}, {}, std::move(ps.remainders), ps.incomplete};
  for (std::size_t i : order) {
    sorted.profiles.push_back(std::move(ps.profiles[i]));
    sorted.schedules.push_back(std::move(ps.schedules[i]));
  }
  return sorted;
}

double cross_term(const MultiscaleField& a_in, const MultiscaleField& b_in, int p) {
  if (p < 2) throw ArgumentError("cross term needs an integer exponent >= 2");
  const MultiscaleField a = normalized(a_in);
  const MultiscaleField b = normalized(b_in);
  if (a.terms.empty() || b.terms.empty()) return 0.0;
  if (a.terms.size() != 1 || b.terms.size() != 1)
    throw ArgumentError("cross term expects single-level arguments");
  const SpectralField& u = a.terms[0];
  const SpectralField& v = b.terms[0];
  const int lo = std::max(u.grid().j_min, v.grid().j_min);
  const int hi = std::min(u.grid().j_max, v.grid().j_max);
  const double sp = critical_s(p);
  std::vector<double> sums(p - 1, 0.0);
  for (int j = lo; j <= hi; ++j) {
    const SpectralField bu = block(u, j);
    const SpectralField bv = block(v, j);
    if (is_zero(bu) || is_zero(bv)) continue;
    const CommonTorus c = common_torus(a.base, bu, bv);
    const bool u_coarse = level_of(a.base, u.grid()) <= level_of(a.base, v.grid());
    const PhysicalField pu = fft::to_physical(u_coarse ? c.coarse : c.fine);
    const PhysicalField pv = fft::to_physical(u_coarse ? c.fine : c.coarse);
    const GridSpec& g = pu.grid;
    const double weight = std::pow(2.0, j * sp * p) * g.cell_volume() / std::ldexp(1.0, 3 * c.d);
    for (int r = 1; r < p; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < g.physical_size(); ++i) {
        const double mu = std::hypot(pu.v[0][i], pu.v[1][i], pu.v[2][i]);
        const double mv = std::hypot(pv.v[0][i], pv.v[1][i], pv.v[2][i]);
        s += std::pow(mu, r) * std::pow(mv, p - r);
      }
      sums[r - 1] += weight * s;
    }
  }
  return *std::max_element(sums.begin(), sums.end());
}

std::vector<PythagoreanRow> pythagorean_check(const ProfileSet& ps,
                                              const std::vector<MultiscaleField>& seq,
                                              const std::vector<std::size_t>& n_list,
                                              std::size_t J, double p) {
  if (J > ps.profiles.size()) throw ArgumentError("J exceeds the number of profiles");
  const bool integer_p = p == std::floor(p) && p >= 2.0;
  std::vector<PythagoreanRow> rows;
  for (std::size_t n : n_list) {
    PythagoreanRow row;
    row.n = n;
    row.J = J;
    row.total = critical_norm_pow(seq.at(n), p);
    std::vector<MultiscaleField> placed;
    for (std::size_t j = 0; j < J; ++j) {
      placed.push_back(single(scale_op(ps.schedules[j].at(n), ps.profiles[j])));
      row.parts += critical_norm_pow(placed.back(), p);
    }
    row.parts += critical_norm_pow(remainder_at(ps, n, J), p);
    row.epsilon = std::abs(row.total - row.parts);
    row.relative = row.total > 0.0 ? row.epsilon / row.total : row.epsilon;
    if (integer_p)
      for (std::size_t a = 0; a < placed.size(); ++a)
        for (std::size_t b = a + 1; b < placed.size(); ++b)
          row.cross_term_max =
              std::max(row.cross_term_max, cross_term(placed[a], placed[b], int(p)));
    rows.push_back(row);
  }
  return rows;
}

EvolvedReport evolve_decomposition(const std::vector<SpectralField>& placed,
                                   const SpectralField& remainder, const SolverConfig& cfg,
                                   double q) {
  EvolvedReport rep;
  const BesovIndex idx = critical_index(q, q);
  SpectralField data = remainder;
  for (const auto& f : placed) data += f;
  const double T = cfg.final_time();
  SolveResult whole = picard_solve(data, cfg, idx);
  if (!whole.report.converged) {
    rep.converged = false;
    rep.failure = "sum";
    return rep;
  }
  Trajectory r = whole.u - heat_trajectory(remainder, cfg.times());
  for (std::size_t j = 0; j < placed.size(); ++j) {
    SolveResult part = picard_solve(placed[j], cfg, idx);
    if (!part.report.converged) {
      rep.converged = false;
      rep.failure = "profile " + std::to_string(j);
      return rep;
    }
    rep.profile_norms.push_back(script_norm(part.u, 2.0, inf, q, T));
    r -= part.u;
  }
  rep.r_norm = script_norm(r, 2.0, inf, q, T);
  rep.remainder_heat_norm = script_norm(heat_trajectory(remainder, cfg.times()), 1.0, inf, q, T);
  rep.remainder_data_norm = besov_norm(remainder, idx);
  return rep;
}

EvolvedReport evolve_decomposition(const ProfileSet& ps, const SolverConfig& cfg, std::size_t n,
                                   std::size_t J, const GridSpec& target, double q) {
  if (J > ps.profiles.size()) throw ArgumentError("J exceeds the number of profiles");
  std::vector<SpectralField> placed;
  for (std::size_t j = 0; j < J; ++j)
    placed.push_back(materialize(single(scale_op(ps.schedules[j].at(n), ps.profiles[j])), target));
  return evolve_decomposition(placed, materialize(remainder_at(ps, n, J), target), cfg, q);
}

}  // namespace bnslab
