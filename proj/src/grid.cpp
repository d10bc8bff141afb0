#include "bnslab/grid.hpp"

#include <cmath>
#include <string>

#include "bnslab/errors.hpp"

namespace bnslab {

GridSpec GridSpec::make(int n, double period) {
  if (n < 16 || (n & (n - 1)) != 0)
    throw ConfigError("grid size must be a power of two >= 16, got " + std::to_string(n));
  if (!(period > 0.0) || !std::isfinite(period))
    throw ConfigError("grid period must be positive and finite");
  GridSpec g;
  g.n = n;
  g.period = period;
  // Small offsets keep exact powers of two from rounding down.
  g.j_min = static_cast<int>(std::floor(std::log2(g.unit()) + 1e-12)) - 1;
  g.j_max = static_cast<int>(std::floor(std::log2(g.nyquist()) + 1e-12)) - 1;
  if (g.j_max - g.j_min < 3) throw ConfigError("fewer than four resolved dyadic shells");
  return g;
}

double GridSpec::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

std::size_t GridSpec::spectral_size() const {
  return static_cast<std::size_t>(n) * n * nz();
}

std::size_t GridSpec::physical_size() const {
  return static_cast<std::size_t>(n) * n * n;
}

GridSpec GridSpec::rescaled(int m) const {
  if (m < -60 || m > 60) throw ArgumentError("dyadic rescaling exponent out of range");
  return make(n, std::ldexp(period, -m));
}

GridSpec GridSpec::refined(int r) const {
  if (r < 0 || r > 4) throw ArgumentError("grid refinement out of range");
  return make(n << r, period);
}

}  // namespace bnslab
