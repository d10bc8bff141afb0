#pragma once

#include <vector>

#include "bnslab/field.hpp"

namespace bnslab {

// Time samples t_0 = 0 < ... < t_M of fields on one grid.
struct Trajectory {
  GridSpec grid;
  std::vector<double> times;
  std::vector<SpectralField> snapshots;

  std::size_t size() const { return times.size(); }
  double final_time() const { return times.back(); }

  // Zero trajectory on the given time grid.
  static Trajectory zeros(const GridSpec& g, const std::vector<double>& times);
  static Trajectory constant(const SpectralField& u, const std::vector<double>& times);

  Trajectory& operator+=(const Trajectory& o);
  Trajectory& operator-=(const Trajectory& o);
  Trajectory& operator*=(double a);
  void axpy(double a, const Trajectory& o);
};

Trajectory operator+(Trajectory a, const Trajectory& b);
Trajectory operator-(Trajectory a, const Trajectory& b);
Trajectory operator*(double s, Trajectory a);

// 0, T/M, ..., T.
std::vector<double> uniform_times(double T, int steps);

// Throws ArgumentError unless times are strictly increasing, start at 0,
// and all snapshots live on the trajectory grid.
void validate(const Trajectory& u);
void require_same_sampling(const Trajectory& a, const Trajectory& b, const char* what);

// t -> e^{t Delta} u0 on the given times.
Trajectory heat_trajectory(const SpectralField& u0, const std::vector<double>& times);

// Largest coefficient modulus over all samples.
double max_abs_coefficient(const Trajectory& u);
double max_abs_difference(const Trajectory& a, const Trajectory& b);

}  // namespace bnslab
