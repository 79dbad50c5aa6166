#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ssd/core/grid.hpp"

namespace ssd {

using Rgb = std::array<std::uint8_t, 3>;

// Fixed colour of a cell code; agent codes are tinted by id.
Rgb palette(std::uint8_t code);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// Top-down view of the whole map, each cell a scale x scale block.
Image render_grid(const GridState& grid, int scale = 8);

// Binary PPM (P6) encoding.
std::string encode_ppm(const Image& image);
void write_ppm(const std::string& path, const Image& image);

}  // namespace ssd
