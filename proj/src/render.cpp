#include "farey/render.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace farey {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Real cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

}  // namespace

DiskArc disk_arc(const std::string& key, Real x, Real y) {
  DiskArc arc;
  arc.key = key;
  arc.from = to_disk_boundary(x);
  arc.to = to_disk_boundary(y);
  Complex sum = arc.from + arc.to;
  // Opposite points, or nearly so, give a diameter.
  Real cos_phi = (arc.from * std::conj(arc.to)).real();
  if (std::abs(sum) < Real(1e-9) || 1 + cos_phi < Real(1e-12)) {
    arc.straight = true;
    return arc;
  }
  arc.center = sum / (1 + cos_phi);
  arc.radius = std::sqrt(std::norm(arc.center) - 1);
  return arc;
}

std::vector<DiskArc> image_arcs(const std::function<Real(const ExtendedRational&)>& h, std::size_t depth) {
  std::vector<DiskArc> out;
  for (const auto& r : enumerate_edges(depth)) out.push_back(disk_arc(r.edge.key(), h(r.edge.a()), h(r.edge.b())));
  return out;
}

std::string render_svg(const std::function<Real(const ExtendedRational&)>& h, const RenderSpec& spec) {
  if (spec.size <= 0) throw std::invalid_argument("render size must be positive");
  const double size = spec.size;
  const double half = size / 2;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.size << "\" height=\""
      << spec.size << "\" viewBox=\"0 0 " << spec.size << " " << spec.size << "\">\n";
  auto stroke = [&](const std::string& key) {
    bool hot = spec.highlight.count(key) != 0;
    return std::string(" fill=\"none\" stroke=\"") + (hot ? "#c0392b" : "#1f2d3d") + "\" stroke-width=\"" +
           num(hot ? 2 * spec.stroke_width : spec.stroke_width) + "\"";
  };

  if (spec.model == RenderModel::Disk) {
    const double radius = half * 0.95;
    auto px = [&](Complex z) { return num(half + radius * static_cast<double>(z.real())); };
    auto py = [&](Complex z) { return num(half - radius * static_cast<double>(z.imag())); };
    out << "<circle cx=\"" << num(half) << "\" cy=\"" << num(half) << "\" r=\"" << num(radius)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << num(spec.stroke_width) << "\"/>\n";
    for (const auto& arc : image_arcs(h, spec.depth)) {
      out << "<path data-edge=\"" << arc.key << "\" d=\"M " << px(arc.from) << " " << py(arc.from);
      if (arc.straight) {
        out << " L " << px(arc.to) << " " << py(arc.to);
      } else {
        // The arc inside the disk passes through the point of its circle nearest the origin.
        // SVG y points down, so a counterclockwise turn in the plane has sweep flag 0.
        Complex inner = arc.center - arc.radius * arc.center / std::abs(arc.center);
        int sweep = cross(arc.from - arc.center, inner - arc.center) > 0 ? 0 : 1;
        out << " A " << num(radius * static_cast<double>(arc.radius)) << " "
            << num(radius * static_cast<double>(arc.radius)) << " 0 0 " << sweep << " " << px(arc.to) << " "
            << py(arc.to);
      }
      out << "\"" << stroke(arc.key) << "/>\n";
    }
  } else {
    // Window [-2, 2] x [0, 4] of the upper half-plane, real axis along the bottom.
    const double scale = size / 4;
    auto sx = [&](Real x) { return num(half + scale * static_cast<double>(x)); };
    const std::string base_y = num(size);
    out << "<line x1=\"0\" y1=\"" << base_y << "\" x2=\"" << num(size) << "\" y2=\"" << base_y
        << "\" stroke=\"#888888\" stroke-width=\"" << num(spec.stroke_width) << "\"/>\n";
    for (const auto& r : enumerate_edges(spec.depth)) {
      Real x = h(r.edge.a()), y = h(r.edge.b());
      std::string key = r.edge.key();
      if (is_infinite(x) || is_infinite(y)) {
        Real foot = is_infinite(x) ? y : x;
        out << "<line data-edge=\"" << key << "\" x1=\"" << sx(foot) << "\" y1=\"" << base_y << "\" x2=\""
            << sx(foot) << "\" y2=\"0\"" << stroke(key) << "/>\n";
        continue;
      }
      Real lo = std::min(x, y), hi = std::max(x, y);
      double rad = scale * static_cast<double>(hi - lo) / 2;
      out << "<path data-edge=\"" << key << "\" d=\"M " << sx(lo) << " " << base_y << " A " << num(rad) << " "
          << num(rad) << " 0 0 1 " << sx(hi) << " " << base_y << "\"" << stroke(key) << "/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace farey
