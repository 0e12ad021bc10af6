#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace germlab_cli {

using nlohmann::json;

namespace {

constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void header(std::ostringstream& o, const std::string& title, const std::string& banner) {
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
    << kW << " " << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<!-- " << escape(banner) << " -->\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n"
    << "<text x=\"" << kW - 4 << "\" y=\"" << kH - 4 << "\" text-anchor=\"end\" fill=\"#999\" font-size=\"9\">"
    << escape(banner) << "</text>\n";
}

void legend(std::ostringstream& o, const std::vector<std::string>& labels) {
  const double x = kW - kRight + 15;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double y = kTop + 10 + 16.0 * static_cast<double>(i);
    o << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y - 8) << "\" width=\"10\" height=\"10\" fill=\""
      << kPalette[i % 10] << "\"/>\n"
      << "<text x=\"" << fmt(x + 15) << "\" y=\"" << fmt(y + 1) << "\">" << escape(labels[i]) << "</text>\n";
  }
}

std::string render_lines(const json& plot, const std::string& banner) {
  const bool log_y = plot.value("log_y", false);
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : plot["series"]) {
    for (const auto& p : s["points"]) {
      const double x = p[0].get<double>(), y = ty(p[1].get<double>());
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) return {};
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + ph - (ty(y) - y0) / (y1 - y0) * ph; };

  std::ostringstream o;
  header(o, plot.value("title", ""), banner);
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    const double sx = kLeft + pw * i / 4.0, sy = kTop + ph - ph * i / 4.0;
    o << "<text x=\"" << fmt(sx) << "\" y=\"" << fmt(kTop + ph + 15) << "\" text-anchor=\"middle\">" << tick(fx)
      << "</text>\n"
      << "<text x=\"" << fmt(kLeft - 5) << "\" y=\"" << fmt(sy + 4) << "\" text-anchor=\"end\">"
      << (log_y ? tick(std::pow(10.0, fy)) : tick(fy)) << "</text>\n";
  }
  o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">"
    << escape(plot.value("x_label", "")) << "</text>\n"
    << "<text x=\"15\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
    << fmt(kTop + ph / 2) << ")\">" << escape(plot.value("y_label", "")) << "</text>\n";

  std::vector<std::string> labels;
  std::size_t idx = 0;
  for (const auto& s : plot["series"]) {
    const char* color = kPalette[idx % 10];
    labels.push_back(s.value("label", ""));
    if (s.value("markers", false)) {
      for (const auto& p : s["points"])
        o << "<circle cx=\"" << fmt(px(p[0].get<double>())) << "\" cy=\"" << fmt(py(p[1].get<double>()))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else if (!s["points"].empty()) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      for (const auto& p : s["points"]) o << fmt(px(p[0].get<double>())) << "," << fmt(py(p[1].get<double>())) << " ";
      o << "\"/>\n";
    }
    ++idx;
  }
  legend(o, labels);
  o << "</svg>\n";
  return o.str();
}

// Unit circle for n = 2; orthographic view of the unit sphere for n = 3, with
// back-facing points drawn hollow.
std::string render_directions(const json& plot, const std::string& banner) {
  const int dim = plot.value("dim", 0);
  if (dim != 2 && dim != 3) return {};
  const double r = (kH - kTop - kBottom) / 2.0;
  const double cx = kLeft + r + 20, cy = kTop + r;
  // View direction (1, 1, 1)/sqrt 3 tilted; screen basis u, v.
  const double u[3] = {0.7071067811865476, -0.7071067811865476, 0.0};
  const double v[3] = {-0.4082482904638631, -0.4082482904638631, 0.8164965809004762};
  const double w[3] = {0.5773502691896258, 0.5773502691896258, 0.5773502691896258};

  std::ostringstream o;
  header(o, plot.value("title", ""), banner);
  o << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
    << "\" fill=\"none\" stroke=\"#999\"/>\n";
  if (dim == 2) {
    o << "<line x1=\"" << fmt(cx - r) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(cx + r) << "\" y2=\"" << fmt(cy)
      << "\" stroke=\"#ddd\"/>\n"
      << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy - r) << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(cy + r)
      << "\" stroke=\"#ddd\"/>\n";
  }
  std::vector<std::string> labels;
  std::size_t idx = 0;
  for (const auto& set : plot["sets"]) {
    const char* color = kPalette[idx % 10];
    labels.push_back(set.value("label", ""));
    for (const auto& p : set["points"]) {
      double sx, sy;
      bool front = true;
      if (dim == 2) {
        sx = p[0].get<double>();
        sy = p[1].get<double>();
      } else {
        const double q[3] = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
        sx = q[0] * u[0] + q[1] * u[1] + q[2] * u[2];
        sy = q[0] * v[0] + q[1] * v[1] + q[2] * v[2];
        front = q[0] * w[0] + q[1] * w[1] + q[2] * w[2] >= 0.0;
      }
      o << "<circle cx=\"" << fmt(cx + r * sx) << "\" cy=\"" << fmt(cy - r * sy) << "\" r=\""
        << (idx == 0 ? "3.5" : "2.5") << "\" " << (front ? "fill=\"" : "fill=\"none\" stroke=\"") << color
        << "\"/>\n";
    }
    ++idx;
  }
  legend(o, labels);
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::string render_svg(const json& plot, const std::string& banner) {
  const std::string kind = plot.value("kind", "");
  if (kind == "lines") return render_lines(plot, banner);
  if (kind == "directions") return render_directions(plot, banner);
  return {};
}

}  // namespace germlab_cli
