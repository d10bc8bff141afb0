#include "bnslab/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "bnslab/errors.hpp"

namespace bnslab {
namespace {

template <class T>
void put(std::ostream& os, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T get(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
    throw ArgumentError("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

}  // namespace

void write_snapshot(const SpectralField& u, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ArgumentError("cannot open snapshot for writing: " + path.string());
  const GridSpec& g = u.grid();
  os.write("BNSF", 4);
  put<std::uint32_t>(os, snapshot_version);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n));
  put<double>(os, g.period);
  const unsigned char flags = 1u | (u.divergence_free() ? 2u : 0u);
  for (int a = 0; a < 3; ++a) put<unsigned char>(os, flags);
  const int n = g.n;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const cplx c = coefficient(u, a, signed_index(i, n), signed_index(j, n), signed_index(l, n));
          put<double>(os, c.real());
          put<double>(os, c.imag());
        }
  if (!os) throw ArgumentError("failed writing snapshot: " + path.string());
}

SpectralField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ArgumentError("cannot open snapshot: " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "BNSF", 4) != 0)
    throw ArgumentError("not a field snapshot (bad magic): " + path.string());
  const auto version = get<std::uint32_t>(is);
  if (version != snapshot_version)
    throw ArgumentError("unsupported snapshot version " + std::to_string(version));
  const auto n = static_cast<int>(get<std::uint32_t>(is));
  const double period = get<double>(is);
  std::array<unsigned char, 3> flags;
  for (auto& f : flags) f = get<unsigned char>(is);
  SpectralField u(GridSpec::make(n, period));
  bool div_free = true;
  for (int a = 0; a < 3; ++a) {
    div_free = div_free && (flags[a] & 2u);
    if (!(flags[a] & 1u)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const double re = get<double>(is), im = get<double>(is);
          const int kx = signed_index(i, n), ky = signed_index(j, n), kz = signed_index(l, n);
          if (kz < 0 || is_nyquist(u.grid(), kx, ky, kz)) continue;
          u.component(a)[mode_index(u.grid(), kx, ky, kz)] = {re, im};
        }
  }
  u.set_divergence_free(div_free);
  return u;
}

}  // namespace bnslab
