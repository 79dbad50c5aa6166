#include "ssd/bench/render.hpp"

#include <fstream>

#include "ssd/core/errors.hpp"
#include "ssd/core/observation.hpp"

namespace ssd {

namespace {

constexpr std::array<Rgb, 8> kAgentTints = {{
    {230, 60, 60}, {60, 120, 230}, {240, 200, 40}, {170, 80, 220},
    {40, 200, 200}, {240, 130, 40}, {240, 100, 180}, {150, 220, 90},
}};

Rgb agent_tint(int id) {
  Rgb base = kAgentTints[static_cast<std::size_t>(id) % kAgentTints.size()];
  // Later laps through the table get darker so ids stay distinct.
  const int lap = id / static_cast<int>(kAgentTints.size());
  for (auto& ch : base) ch = static_cast<std::uint8_t>(ch * 4 / (4 + lap));
  return base;
}

}  // namespace

Rgb palette(std::uint8_t c) {
  if (code::is_agent(c)) return agent_tint(c - code::kAgentBase);
  if (code::is_coin(c)) {
    Rgb tint = agent_tint(code::coin_owner(c));
    for (auto& ch : tint) ch = static_cast<std::uint8_t>(ch / 2 + 40);
    return tint;
  }
  switch (c) {
    case code::kFloor: return {24, 24, 24};
    case code::kWall: return {110, 110, 110};
    case code::kRiver: return {40, 90, 200};
    case code::kPollution: return {110, 120, 50};
    case code::kApple: return {60, 200, 70};
    case code::kIron: return {150, 150, 170};
    case code::kGold: return {230, 190, 40};
    case code::kGoldPartial: return {250, 230, 140};
    case code::kMushRed: return {200, 30, 30};
    case code::kMushGreen: return {30, 160, 30};
    case code::kMushBlue: return {30, 60, 220};
    case code::kMushOrange: return {240, 140, 20};
    case code::kToken: return {200, 100, 220};
    case code::kResCoop: return {60, 230, 140};
    case code::kResDefect: return {230, 70, 90};
    case code::kSelf: return {255, 255, 255};
    default: return {255, 0, 255};
  }
}

Image render_grid(const GridState& grid, int scale) {
  if (scale < 1) throw ContractViolation("render_grid: scale must be positive");
  Image img;
  img.width = grid.width * scale;
  img.height = grid.height * scale;
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) {
      const Rgb color = palette(cell_code(grid, {r, c}, kNoAgent));
      for (int y = r * scale; y < (r + 1) * scale; ++y) {
        for (int x = c * scale; x < (c + 1) * scale; ++x) {
          const auto at = (static_cast<std::size_t>(y) * img.width + x) * 3;
          img.rgb[at] = color[0];
          img.rgb[at + 1] = color[1];
          img.rgb[at + 2] = color[2];
        }
      }
    }
  }
  return img;
}

std::string encode_ppm(const Image& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
  return out;
}

void write_ppm(const std::string& path, const Image& image) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'", "out");
  const auto bytes = encode_ppm(image);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw ConfigError("cannot write '" + path + "'", "out");
}

}  // namespace ssd
