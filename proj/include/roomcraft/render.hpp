#pragma once

#include <string>

#include "roomcraft/placement.hpp"

namespace roomcraft {

// Top-down SVG: 100 px per meter, origin top-left, y-down. Room outline with
// door/window marks, oriented footprints with facing arrows and id labels.
// Output is byte-stable for identical layouts.
std::string render_svg(const Layout& layout);

}  // namespace roomcraft
