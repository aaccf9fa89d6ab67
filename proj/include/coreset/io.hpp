#pragma once

#include <string>

#include "coreset/points.hpp"

namespace coreset {

// Format by file extension: ".csv" is text, anything else is the binary
// layout below. Binary round-trips bit-exactly.
//
//   points:   "CSET" | u32 version=1 | u64 n | u64 d | n*d f64, row-major
//   weighted: "CSWT" | u32 version=1 | u64 n | u64 d | n*d f64 | n f64 weights
//
// All integers and floats little-endian. CSV: one point per row, optional
// header; the weighted variant carries a trailing `weight` column.

PointSet load_points(const std::string& path);
void save_points(const PointSet& u, const std::string& path);

WeightedPointSet load_coreset(const std::string& path);
void save_coreset(const WeightedPointSet& ws, const std::string& path);

void save_text(const std::string& text, const std::string& path);

}  // namespace coreset
