#include "bnslab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bnslab/errors.hpp"
#include "bnslab/spectral_ops.hpp"

namespace bnslab {

Trajectory Trajectory::zeros(const GridSpec& g, const std::vector<double>& times) {
  Trajectory t{g, times, {}};
  t.snapshots.assign(times.size(), SpectralField(g));
  for (auto& s : t.snapshots) s.set_divergence_free(true);
  return t;
}

Trajectory Trajectory::constant(const SpectralField& u, const std::vector<double>& times) {
  Trajectory t{u.grid(), times, {}};
  t.snapshots.assign(times.size(), u);
  return t;
}

Trajectory& Trajectory::operator+=(const Trajectory& o) {
  axpy(1.0, o);
  return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& o) {
  axpy(-1.0, o);
  return *this;
}

Trajectory& Trajectory::operator*=(double a) {
  for (auto& s : snapshots) s *= a;
  return *this;
}

void Trajectory::axpy(double a, const Trajectory& o) {
  require_same_sampling(*this, o, "trajectory arithmetic");
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    snapshots[i].axpy(a, o.snapshots[i]);
    snapshots[i].set_divergence_free(snapshots[i].divergence_free() &&
                                     o.snapshots[i].divergence_free());
  }
}

Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
Trajectory operator*(double s, Trajectory a) { return a *= s; }

std::vector<double> uniform_times(double T, int steps) {
  if (!(T > 0.0) || steps < 1) throw ArgumentError("time grid needs T > 0 and at least one step");
  std::vector<double> t(steps + 1);
  for (int i = 0; i <= steps; ++i) t[i] = T * i / steps;
  return t;
}

void validate(const Trajectory& u) {
  if (u.times.empty() || u.times.size() != u.snapshots.size())
    throw ArgumentError("trajectory times and snapshots disagree");
  if (u.times.front() != 0.0) throw ArgumentError("trajectory must start at t = 0");
  for (std::size_t i = 1; i < u.times.size(); ++i)
    if (!(u.times[i] > u.times[i - 1])) throw ArgumentError("trajectory times must increase");
  for (const auto& s : u.snapshots) require_same_grid(u.grid, s.grid(), "trajectory");
}

void require_same_sampling(const Trajectory& a, const Trajectory& b, const char* what) {
  require_same_grid(a.grid, b.grid, what);
  if (a.times.size() != b.times.size())
    throw ArgumentError(std::string(what) + ": mismatched time grids");
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
      throw ArgumentError(std::string(what) + ": mismatched time grids");
}

Trajectory heat_trajectory(const SpectralField& u0, const std::vector<double>& times) {
  Trajectory t{u0.grid(), times, {}};
  t.snapshots.reserve(times.size());
  for (double tau : times) t.snapshots.push_back(heat_flow(u0, tau));
  validate(t);
  return t;
}

double max_abs_coefficient(const Trajectory& u) {
  double m = 0.0;
  for (const auto& s : u.snapshots) m = std::max(m, max_abs_coefficient(s));
  return m;
}

double max_abs_difference(const Trajectory& a, const Trajectory& b) {
  require_same_sampling(a, b, "trajectory comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, max_abs_difference(a.snapshots[i], b.snapshots[i]));
  return m;
}

}  // namespace bnslab
