#include "relreg/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "relreg/error.hpp"

namespace relreg {

namespace {

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* what) {
  skip_separators(in);
  int value = -1;
  if (!(in >> value) || value <= 0) throw ConfigError(std::string("PGM: invalid ") + what);
  return value;
}

}  // namespace

Grid2D read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') throw ConfigError("PGM: expected binary P5 header");
  const int width = read_header_int(in, "width");
  const int height = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  if (maxval > 255) throw ConfigError("PGM: only 8-bit rasters (maxval <= 255) are supported");
  in.get();  // single whitespace byte before the raster
  std::vector<unsigned char> bytes(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
    throw ConfigError("PGM: truncated raster data");
  std::vector<double> values(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i)
    values[i] = std::min(1.0, static_cast<double>(bytes[i]) / maxval);
  return Grid2D(width, height, std::move(values));
}

Grid2D read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("PGM: cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(const std::filesystem::path& path, const Grid2D& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("PGM: cannot write " + path.string());
  out << "P5\n" << grid.width << ' ' << grid.height << "\n255\n";
  for (double v : grid.values)
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
  if (!out) throw std::runtime_error("PGM: write failed for " + path.string());
}

}  // namespace relreg
