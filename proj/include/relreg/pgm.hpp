#pragma once

#include <filesystem>
#include <istream>

#include "relreg/costmap.hpp"

namespace relreg {

/// Binary graymap ("P5", maxval <= 255). Samples are scaled by 1/maxval.
Grid2D read_pgm(std::istream& in);
Grid2D read_pgm(const std::filesystem::path& path);

/// Writes an 8-bit P5 image; values are clamped to [0, 1] and rounded to v*255.
void write_pgm(const std::filesystem::path& path, const Grid2D& grid);

}  // namespace relreg
