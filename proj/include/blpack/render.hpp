#pragma once

#include "blpack/solver.hpp"

#include <string>

namespace blpack {

/// SVG with the unit circle and one circle per vertex; branch vertices are
/// filled black. Output depends only on the packing.
std::string render_svg(const Packing& p, int size = 800);

/// Atomic write of render_svg; throws IoError.
void write_svg(const Packing& p, const std::string& path, int size = 800);

}  // namespace blpack
