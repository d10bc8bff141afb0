#include "bnslab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnslab/bilinear.hpp"
#include "bnslab/errors.hpp"
#include "bnslab/space_time.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {
namespace {

double endpoint_norm(const Trajectory& u, double p) {
  return script_norm(block_norm_table(u, p), 1.0, inf, p, 0.0, u.final_time());
}

double relative_change(const Trajectory& a, const std::vector<SpectralField>& before,
                       std::size_t first) {
  double diff = 0.0, size = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    diff = std::max(diff, max_abs_difference(a.snapshots[first + i], before[i]));
    size = std::max(size, max_abs_coefficient(a.snapshots[first + i]));
  }
  if (size == 0.0) return diff;
  return diff / size;
}

std::vector<std::size_t> uniform_splits(std::size_t steps, std::size_t slabs) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < slabs; ++i) {
    const std::size_t at = (i * steps) / slabs;
    if (s.empty() || at > s.back()) s.push_back(at);
  }
  return s;
}

Trajectory slice(const Trajectory& u, std::size_t first, std::size_t last) {
  Trajectory out{u.grid, {}, {}};
  for (std::size_t i = first; i <= last; ++i) {
    out.times.push_back(u.times[i] - u.times[first]);
    out.snapshots.push_back(u.snapshots[i]);
  }
  return out;
}

// Fixed point on samples [first, last]; samples before `first` are final and
// `integral` holds B(v, w)(t_first).  Returns false if the slab does not contract.
bool solve_slab(const Trajectory& v, const Trajectory& z, Trajectory& w, std::size_t first,
                std::size_t last, const SpectralField& integral, double tol, int& sweeps) {
  Trajectory local_v = slice(v, first, last);
  Trajectory forcing = Trajectory::zeros(v.grid, local_v.times);
  const Trajectory carried = heat_trajectory(integral, local_v.times);
  forcing.snapshots[0] = bilinear_forcing(v.snapshots[first], w.snapshots[first]);
  double prev_inc = inf;
  for (int it = 0; it < 200; ++it) {
    for (std::size_t i = 1; i < forcing.size(); ++i)
      forcing.snapshots[i] = bilinear_forcing(local_v.snapshots[i], w.snapshots[first + i]);
    const Trajectory integral_now = duhamel_integral(forcing);
    std::vector<SpectralField> before(w.snapshots.begin() + first + 1,
                                      w.snapshots.begin() + last + 1);
    for (std::size_t i = 1; i < forcing.size(); ++i) {
      SpectralField next = z.snapshots[first + i];
      next.axpy(2.0, carried.snapshots[i]);
      next.axpy(2.0, integral_now.snapshots[i]);
      w.snapshots[first + i] = std::move(next);
    }
    ++sweeps;
    const double inc = relative_change(w, before, first + 1);
    if (!std::isfinite(inc)) throw NumericalError("K inversion produced a non-finite iterate");
    if (inc <= tol) return true;
    if (it >= 2 && inc > 0.5 * prev_inc) return false;
    prev_inc = inc;
  }
  return false;
}

constexpr std::size_t kKrylovSlab = 8;

using SlabVector = std::vector<SpectralField>;

double dot(const SlabVector& a, const SlabVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += inner_product(a[i], b[i]);
  return s;
}

void axpy(SlabVector& y, double a, const SlabVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i].axpy(a, x[i]);
}

// Restarted GMRES on the same slab problem, for drifts too strong for the
// fixed point: (I - 2 D_slab F(v, .)) w = z + 2 carried + 2 D_slab F(v, w(t_first)).
bool gmres_slab(const Trajectory& v, const Trajectory& z, Trajectory& w, std::size_t first,
                std::size_t last, const SpectralField& integral, double tol, int& sweeps) {
  constexpr int restart = 30, max_restarts = 20;
  const Trajectory local_v = slice(v, first, last);
  const std::size_t len = last - first;
  auto duhamel_tail = [&](Trajectory forcing, const SpectralField* carried0) {
    const Trajectory d = duhamel_integral(forcing);
    const Trajectory c = carried0 ? heat_trajectory(*carried0, local_v.times) : Trajectory{};
    SlabVector out;
    for (std::size_t i = 1; i <= len; ++i) {
      SpectralField x = 2.0 * d.snapshots[i];
      if (carried0) x.axpy(2.0, c.snapshots[i]);
      out.push_back(std::move(x));
    }
    return out;
  };
  auto apply = [&](const SlabVector& x) {
    Trajectory forcing = Trajectory::zeros(v.grid, local_v.times);
    for (std::size_t i = 1; i <= len; ++i)
      forcing.snapshots[i] = bilinear_forcing(local_v.snapshots[i], x[i - 1]);
    SlabVector y = x;
    axpy(y, -1.0, duhamel_tail(std::move(forcing), nullptr));
    ++sweeps;
    return y;
  };
  Trajectory forcing0 = Trajectory::zeros(v.grid, local_v.times);
  forcing0.snapshots[0] = bilinear_forcing(v.snapshots[first], w.snapshots[first]);
  SlabVector rhs = duhamel_tail(std::move(forcing0), &integral);
  for (std::size_t i = 1; i <= len; ++i) rhs[i - 1] += z.snapshots[first + i];
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  SlabVector x(z.snapshots.begin() + first + 1, z.snapshots.begin() + last + 1);
  if (rhs_norm == 0.0) {
    for (auto& f : x) f.set_zero();
  }
  for (int cycle = 0; cycle < max_restarts && rhs_norm > 0.0; ++cycle) {
    SlabVector r = rhs;
    axpy(r, -1.0, apply(x));
    const double beta = std::sqrt(dot(r, r));
    if (!std::isfinite(beta)) throw NumericalError("K inversion produced a non-finite iterate");
    if (beta <= tol * rhs_norm) break;
    std::vector<SlabVector> basis;
    for (auto& f : r) f *= 1.0 / beta;
    basis.push_back(std::move(r));
    std::vector<std::vector<double>> hess;  // column k has k + 2 entries
    std::vector<double> cs, sn, res{beta};
    int k = 0;
    for (; k < restart; ++k) {
      SlabVector q = apply(basis[k]);
      std::vector<double> col(k + 2);
      for (int i = 0; i <= k; ++i) {
        col[i] = dot(q, basis[i]);
        axpy(q, -col[i], basis[i]);
      }
      col[k + 1] = std::sqrt(dot(q, q));
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * col[i] + sn[i] * col[i + 1];
        col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
        col[i] = t;
      }
      const double rho = std::hypot(col[k], col[k + 1]);
      cs.push_back(col[k] / rho);
      sn.push_back(col[k + 1] / rho);
      col[k] = rho;
      res.push_back(-sn[k] * res[k]);
      res[k] *= cs[k];
      const double h_next = col[k + 1];
      col.resize(k + 1);
      hess.push_back(std::move(col));
      if (std::abs(res[k + 1]) <= 0.1 * tol * rhs_norm || h_next == 0.0) {
        ++k;
        break;
      }
      for (auto& f : q) f *= 1.0 / h_next;
      basis.push_back(std::move(q));
    }
    std::vector<double> y(k);
    for (int i = k - 1; i >= 0; --i) {
      double t = res[i];
      for (int j = i + 1; j < k; ++j) t -= hess[j][i] * y[j];
      y[i] = t / hess[i][i];
    }
    for (int i = 0; i < k; ++i) axpy(x, y[i], basis[i]);
  }
  SlabVector r = rhs;
  axpy(r, -1.0, apply(x));
  if (!(std::sqrt(dot(r, r)) <= tol * std::max(rhs_norm, 1e-300) || rhs_norm == 0.0)) return false;
  for (std::size_t i = 1; i <= len; ++i) w.snapshots[first + i] = std::move(x[i - 1]);
  return true;
}

}  // namespace

double relative_script_distance(const Trajectory& a, const Trajectory& b,
                                const Trajectory& reference, double p) {
  const double diff = endpoint_norm(a - b, p);
  const double size = endpoint_norm(reference, p);
  if (size == 0.0) return diff;
  return diff / size;
}

ExpansionResult duhamel_expand(const Trajectory& u, const SpectralField& u0, int N, double p) {
  if (N < 2 || N > 4) throw ArgumentError("Duhamel expansion supports orders 2 to 4");
  if (!(p > 3.0 * (N - 1)))
    throw ArgumentError("Duhamel expansion of order " + std::to_string(N) + " needs p > " +
                        std::to_string(3 * (N - 1)));
  validate(u);
  require_same_grid(u.grid, u0.grid(), "Duhamel expansion");
  const Trajectory lift = heat_trajectory(u0, u.times);
  ExpansionResult r;
  r.p = p;
  r.terms.push_back(lift);
  const Trajectory z2 = bilinear_B(u, u);
  if (N == 2) {
    r.tail = z2;
  } else {
    const Trajectory quad = bilinear_B(lift, lift);
    r.terms.push_back(quad);
    Trajectory z3 = bilinear_B(z2, z2);
    z3.axpy(2.0, bilinear_B(lift, z2));
    if (N == 3) {
      r.tail = std::move(z3);
    } else {
      r.terms.push_back(2.0 * bilinear_B(lift, quad));
      Trajectory z4 = bilinear_B(z2, z2);
      z4.axpy(2.0, bilinear_B(lift, z3));
      r.tail = std::move(z4);
    }
  }
  Trajectory assembled = r.tail;
  for (const auto& t : r.terms) assembled += t;
  r.residual = relative_script_distance(u, assembled, u, p);
  for (const auto& t : r.terms) r.term_norms.push_back(endpoint_norm(t, p));
  const double e = p / N;
  r.tail_norm = script_norm(block_norm_table(r.tail, e), e, e, e, 0.0, u.final_time());
  return r;
}

Trajectory apply_L(const OperatorHandle& h, const Trajectory& w) {
  Trajectory out = w;
  out.axpy(-2.0, bilinear_B(h.drift, w));
  return out;
}

InversionResult invert_K(const OperatorHandle& h, const Trajectory& z, double tol) {
  require_same_sampling(h.drift, z, "K inversion");
  const std::size_t steps = z.size() - 1;
  std::vector<std::size_t> splits =
      h.slab_splits.empty() ? std::vector<std::size_t>{0} : h.slab_splits;
  if (splits.front() != 0) throw ArgumentError("slab partition must start at sample 0");
  InversionResult res;
  while (true) {
    Trajectory w = z;
    SpectralField integral(z.grid);
    bool ok = true;
    for (std::size_t s = 0; s < splits.size() && ok; ++s) {
      const std::size_t first = splits[s];
      const std::size_t last = s + 1 < splits.size() ? splits[s + 1] : steps;
      if (last <= first) continue;
      ok = solve_slab(h.drift, z, w, first, last, integral, tol, res.iterations);
      if (!ok && last - first <= kKrylovSlab)
        ok = gmres_slab(h.drift, z, w, first, last, integral, tol, res.iterations);
      if (ok) {
        // Recover B(v, w)(t_last) from the converged identity w = z + 2B.
        integral = w.snapshots[last] - z.snapshots[last];
        integral *= 0.5;
      }
    }
    if (ok) {
      res.w = std::move(w);
      res.slab_splits = splits;
      return res;
    }
    if (splits.size() >= 64 || splits.size() >= steps)
      throw NumericalError("K inversion failed even on 64 slabs");
    splits = uniform_splits(steps, std::min<std::size_t>(std::min<std::size_t>(64, steps),
                                                         2 * splits.size()));
  }
}

SolutionExpansion expand_solution(const SpectralField& u0, int k, const SolverConfig& cfg) {
  if (k < 1 || k > 4) throw ArgumentError("expansion depth k must lie in [1, 4]");
  const double p = 3.0 * std::ldexp(1.0, k) - 2.0;
  SolveResult solved = picard_solve(u0, cfg, critical_index(p, p));
  if (!solved.report.converged)
    throw NumericalError("Picard iteration diverged; expansion needs a converged solution");
  const Trajectory& u = solved.u;
  ExpansionResult r;
  r.p = p;
  r.terms.push_back(heat_trajectory(u0, u.times));
  Trajectory drift = r.terms[0];
  Trajectory w = u - r.terms[0];
  for (int n = 0; n < k; ++n) {
    const OperatorHandle h{drift, {}};
    const Trajectory& last = r.terms.back();
    Trajectory next_term = invert_K(h, bilinear_B(last, last)).w;
    w = invert_K(h, bilinear_B(w, w)).w;
    drift += next_term;
    r.terms.push_back(std::move(next_term));
  }
  r.tail = w;
  Trajectory assembled = r.tail;
  for (const auto& t : r.terms) assembled += t;
  r.residual = relative_script_distance(u, assembled, u, p);
  const double T = u.final_time();
  for (int n = 0; n <= k; ++n) {
    const double pn = p / std::ldexp(1.0, n);
    r.term_norms.push_back(script_norm(block_norm_table(r.terms[n], pn), 1.0, inf, pn, 0.0, T));
  }
  const double pw = 6.0 * p / (2.0 * p + 1.0);
  r.tail_norm = script_norm(block_norm_table(r.tail, pw), inf, inf, inf, 0.0, T);
  return {std::move(r), std::move(solved.u), std::move(solved.report)};
}

std::vector<SimpleIterationStep> simple_iteration(const SpectralField& u0, const Trajectory& u,
                                                  const Trajectory& v0, const Trajectory& w0,
                                                  int j_steps, double p, double blowout) {
  require_same_sampling(u, v0, "simple iteration");
  require_same_sampling(u, w0, "simple iteration");
  const Trajectory lift = heat_trajectory(u0, u.times);
  const double T = u.final_time();
  auto describe = [&](Trajectory v, Trajectory w) {
    SimpleIterationStep s;
    s.defect = relative_script_distance(u, v + w, u, p);
    std::vector<double> vp, w3;
    for (std::size_t i = 0; i < u.size(); ++i) {
      vp.push_back(lp_norm(v.snapshots[i], p));
      w3.push_back(lp_norm(w.snapshots[i], 3.0));
    }
    s.v_sup_lp = time_lebesgue(u.times, vp, inf, 0.5 * T, T);
    s.w_spacetime_l3 = time_lebesgue(u.times, w3, 3.0, 0.0, T);
    s.v = std::move(v);
    s.w = std::move(w);
    return s;
  };
  std::vector<SimpleIterationStep> out;
  out.push_back(describe(v0, w0));
  for (int j = 0; j < j_steps; ++j) {
    const Trajectory& v = out.back().v;
    const Trajectory& w = out.back().w;
    Trajectory v_next = lift + bilinear_B(v, v);
    v_next.axpy(2.0, bilinear_B(v, w));
    Trajectory w_next = bilinear_B(w, w);
    out.push_back(describe(std::move(v_next), std::move(w_next)));
    if (!(out.back().defect <= (j + 1) * blowout))
      throw NumericalError("simple iteration lost the decomposition identity at step " +
                           std::to_string(j + 1));
  }
  return out;
}

}  // namespace bnslab
