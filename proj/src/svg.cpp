#include "coherence/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>
#include <string>

namespace coherence {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 190.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* pattern = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg(const SweepResult& result, std::ostream& out, const std::string& title) {
  const auto& config = result.config;
  const double x_min = *std::min_element(config.grid.begin(), config.grid.end());
  double x_max = *std::max_element(config.grid.begin(), config.grid.end());
  if (x_max <= x_min) x_max = x_min + 1.0;
  double y_max = 0.0;
  for (const auto& c : result.cells) y_max = std::max(y_max, c.mean_error + c.std_error);
  y_max = y_max > 0.0 ? 1.1 * y_max : 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << xml_escape(title)
      << "</text>\n";

  // axes
  out << "<g stroke=\"black\" fill=\"none\">\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << py(0) << "\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << py(0) << "\"/>\n";
  out << "</g>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x_min + (x_max - x_min) * i / 4.0;
    const double y = y_max * i / 4.0;
    out << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(0) + 18)
        << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt(y, "%.3f") << "</text>\n";
  }
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\">parameter (rad)</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << fmt(kTop + plot_h / 2)
      << ")\">mean error</text>\n";

  const std::size_t n_schemes = config.schemes.size();
  for (std::size_t s = 0; s < n_schemes; ++s) {
    const char* color = kColors[s % kColors.size()];
    std::string points;
    out << "<g stroke=\"" << color << "\">\n";
    for (std::size_t g = 0; g < config.grid.size(); ++g) {
      const auto& c = result.cell(g, s);
      const double x = px(c.parameter);
      if (!points.empty()) points += ' ';
      points += fmt(x) + "," + fmt(py(c.mean_error));
      out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py(std::max(0.0, c.mean_error - c.std_error)))
          << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(py(c.mean_error + c.std_error)) << "\"/>\n";
    }
    out << "</g>\n";
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << points << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    const auto& spec = config.schemes[s];
    out << "<line x1=\"" << fmt(kWidth - kRight + 15) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(kWidth - kRight + 40) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kWidth - kRight + 46) << "\" y=\"" << fmt(ly + 4) << "\">"
        << xml_escape(spec.label() + " " + std::string(to_string(spec.measure))) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace coherence
