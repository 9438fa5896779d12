#pragma once

#include "tsgkit/tensor.hpp"

#include <cstdint>
#include <filesystem>

namespace tsgkit {

/// Binary tensor exchange format:
///   magic "TSGT" (4 bytes)
///   format version, u32 little-endian (currently 1)
///   R, l, N, each u64 little-endian
///   R*l*N IEEE-754 doubles, little-endian, (r, j, i) row-major
/// Round-trips are bit-exact.
inline constexpr char kTensorMagic[4] = {'T', 'S', 'G', 'T'};
inline constexpr std::uint32_t kTensorFormatVersion = 1;
inline constexpr std::size_t kTensorHeaderBytes = 4 + 4 + 3 * 8;

void save_tensor(const TimeSeriesTensor& tensor, const std::filesystem::path& path);
TimeSeriesTensor load_tensor(const std::filesystem::path& path);

/// Parse a plain CSV of real values into an (L, N) series. Every row must
/// have the same column count; with `has_header` the first line supplies
/// column names. Errors name the offending row and column.
RawSeries load_raw_csv(const std::filesystem::path& path, bool has_header);

/// Parse the long-format windowed CSV (header: window_id,time_step,dim_0,...)
/// emitted by external generators. The (window_id, time_step) grid must be
/// complete and free of duplicates; row order is arbitrary.
TimeSeriesTensor load_tensor_csv(const std::filesystem::path& path);

/// FNV-1a digest of a file's bytes, as fixed-width hex. Provenance currency.
std::string file_digest_hex(const std::filesystem::path& path);

} // namespace tsgkit
