#pragma once

#include <cstdint>
#include <string>

#include "geodim/manifold.hpp"

namespace geodim {

/// Writes <base>.bin (64-bit floats, row-major, little-endian) and
/// <base>.meta (key: value sidecar).
void save_cloud(const PointCloud& cloud, const std::string& base_path);
PointCloud load_cloud(const std::string& base_path);

/// Plain numeric CSV of the sample matrix; refuses clouds past 1e7 entries.
void export_cloud_csv(const PointCloud& cloud, const std::string& path);

/// FNV-1a over the raw sample bytes; keys the neighbor-table cache.
std::uint64_t cloud_digest(const PointCloud& cloud);

// shortest round-trip formatting used by every text emitter
std::string format_double(double v);
double parse_double(const std::string& text);

} // namespace geodim
