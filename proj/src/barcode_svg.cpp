#include "tda/barcode_svg.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tda {

namespace {

const char* bar_color(int dimension) {
  switch (dimension) {
    case 0:
      return "#d62728";  // red: connected components
    case 1:
      return "#1f77b4";  // blue: loops
    case 2:
      return "#2ca02c";
    default:
      return "#7f7f7f";
  }
}

// A tick spacing of 1, 2, or 5 times a power of ten, aiming for ~8 ticks.
double tick_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) return mag * mult;
  }
  return mag * 10.0;
}

}  // namespace

std::string render_barcode_svg(const PersistenceDiagram& diagram, const std::vector<int>& dims,
                               const BarcodeRenderOptions& options) {
  std::vector<PersistencePair> bars;
  for (const PersistencePair& p : diagram.pairs) {
    if (std::find(dims.begin(), dims.end(), p.dimension) != dims.end()) bars.push_back(p);
  }
  std::sort(bars.begin(), bars.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });

  double axis_max = options.axis_max;
  if (axis_max <= 0.0) {
    double largest = 0.0;
    for (const PersistencePair& p : bars) {
      largest = std::max(largest, p.birth);
      if (!p.is_infinite()) largest = std::max(largest, p.death);
    }
    axis_max = largest > 0.0 ? largest * 1.05 : 1.0;
  }

  const double rows = std::max<size_t>(bars.size(), 1);
  const double height = options.margin_top + options.margin_bottom +
                        rows * (options.bar_height + options.bar_gap);
  const double plot_w = options.width - options.margin_left - options.margin_right;
  auto x_of = [&](double t) {
    return options.margin_left + std::clamp(t / axis_max, 0.0, 1.0) * plot_w;
  };
  const double axis_y = height - options.margin_bottom;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << format_double(height, 6) << "\" viewBox=\"0 0 " << options.width << " "
      << format_double(height, 6) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Bars, top to bottom.
  double y = options.margin_top;
  for (const PersistencePair& p : bars) {
    const double x0 = x_of(p.birth);
    const double x1 = p.is_infinite() ? options.margin_left + plot_w : x_of(p.death);
    out << "<rect class=\"bar dim" << p.dimension << "\" x=\"" << format_double(x0, 6)
        << "\" y=\"" << format_double(y, 6) << "\" width=\""
        << format_double(std::max(0.5, x1 - x0), 6) << "\" height=\"" << options.bar_height
        << "\" fill=\"" << bar_color(p.dimension) << "\"/>\n";
    if (p.is_infinite()) {
      const double ay = y + options.bar_height / 2.0;
      out << "<path class=\"inf-arrow\" d=\"M " << format_double(x1, 6) << " "
          << format_double(ay - 5.0, 6) << " L " << format_double(x1 + 10.0, 6) << " "
          << format_double(ay, 6) << " L " << format_double(x1, 6) << " "
          << format_double(ay + 5.0, 6) << " Z\" fill=\"" << bar_color(p.dimension) << "\"/>\n";
    }
    y += options.bar_height + options.bar_gap;
  }

  // Axis and ticks.
  out << "<line x1=\"" << options.margin_left << "\" y1=\"" << format_double(axis_y, 6)
      << "\" x2=\"" << format_double(options.margin_left + plot_w, 6) << "\" y2=\""
      << format_double(axis_y, 6) << "\" stroke=\"black\"/>\n";
  const double step = tick_step(axis_max);
  for (double t = 0.0; t <= axis_max * (1.0 + 1e-12); t += step) {
    const double x = x_of(t);
    out << "<line x1=\"" << format_double(x, 6) << "\" y1=\"" << format_double(axis_y, 6)
        << "\" x2=\"" << format_double(x, 6) << "\" y2=\"" << format_double(axis_y + 5.0, 6)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_double(x, 6) << "\" y=\"" << format_double(axis_y + 18.0, 6)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(t, 6) << "</text>\n";
  }
  out << "<text x=\"" << format_double(options.margin_left + plot_w / 2.0, 6) << "\" y=\""
      << format_double(height - 8.0, 6)
      << "\" font-size=\"12\" text-anchor=\"middle\">filtration t</text>\n";

  // Legend.
  double lx = options.margin_left;
  for (int dim : dims) {
    out << "<rect x=\"" << format_double(lx, 6) << "\" y=\"8\" width=\"18\" height=\"8\" fill=\""
        << bar_color(dim) << "\"/>\n";
    out << "<text x=\"" << format_double(lx + 24.0, 6)
        << "\" y=\"16\" font-size=\"12\">dim " << dim << "</text>\n";
    lx += 90.0;
  }
  out << "</svg>\n";
  return out.str();
}

void write_barcode_svg(const PersistenceDiagram& diagram, const std::vector<int>& dims,
                       const std::filesystem::path& path, const BarcodeRenderOptions& options) {
  atomic_write_file(path, render_barcode_svg(diagram, dims, options));
}

}  // namespace tda
