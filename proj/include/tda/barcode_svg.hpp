// Persistence barcode rendering: one horizontal bar per pair, dimension 0 in
// red and dimension 1 in blue, infinite bars drawn to the right margin with an
// arrowhead. Hand-emitted SVG, no plotting dependency.
#pragma once

#include "tda/persistence.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tda {

struct BarcodeRenderOptions {
  double axis_max = 0.0;  // 0 = auto (largest finite endpoint, padded)
  // Fixed geometry; documented in the README's format reference.
  double width = 900.0;
  double bar_height = 6.0;
  double bar_gap = 3.0;
  double margin_left = 60.0;
  double margin_right = 40.0;
  double margin_top = 30.0;
  double margin_bottom = 40.0;
};

std::string render_barcode_svg(const PersistenceDiagram& diagram, const std::vector<int>& dims,
                               const BarcodeRenderOptions& options = {});

void write_barcode_svg(const PersistenceDiagram& diagram, const std::vector<int>& dims,
                       const std::filesystem::path& path,
                       const BarcodeRenderOptions& options = {});

}  // namespace tda
