#pragma once

#include <cstdint>
#include <filesystem>

#include "bnslab/field.hpp"

namespace bnslab {

inline constexpr std::uint32_t snapshot_version = 1;

// Layout: "BNSF", u32 version, u32 n, f64 period, u8 flags[3], then for each
// component with flag bit 0 set, n^3 little-endian complex doubles (re, im)
// in row-major order over FFT wavevector indices.  Flag bit 1 marks a
// divergence-free field.
void write_snapshot(const SpectralField& u, const std::filesystem::path& path);
SpectralField read_snapshot(const std::filesystem::path& path);

}  // namespace bnslab
