#include "troplane/render.hpp"

#include <sstream>

#include "troplane/error.hpp"

namespace troplane {

std::string decimal6(const Rational& q) {
  Rational scaled = abs(q) * 1000000 + frac(1, 2);
  Integer n = floor_of(scaled);
  bool negative = q < 0 && n != 0;
  std::string digits = n.get_str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
  return negative ? "-" + out : out;
}

namespace {

// Clips p + t*d, t in [t0, t1] (t1 empty for rays), to the box. Empty when
// the piece misses the box.
std::optional<std::pair<RationalPoint, RationalPoint>> clip(const RationalPoint& p, const RationalPoint& d,
                                                            Rational t0, std::optional<Rational> t1,
                                                            const Viewport& box) {
  auto bound = [&](const Rational& origin, const Rational& dir, const Rational& lo, const Rational& hi) {
    if (dir == 0) return origin >= lo && origin <= hi;
    Rational a = (lo - origin) / dir, b = (hi - origin) / dir;
    if (a > b) std::swap(a, b);
    if (a > t0) t0 = a;
    if (!t1 || b < *t1) t1 = b;
    return true;
  };
  if (!bound(p.x, d.x, box.xmin, box.xmax) || !bound(p.y, d.y, box.ymin, box.ymax)) return std::nullopt;
  if (!t1 || t0 > *t1) return std::nullopt;
  return std::make_pair(RationalPoint(p.x + t0 * d.x, p.y + t0 * d.y), RationalPoint(p.x + *t1 * d.x, p.y + *t1 * d.y));
}

Viewport fit(const std::vector<TropicalCurve>& curves, const std::optional<Divisor>& divisor) {
  std::vector<RationalPoint> pts;
  for (const auto& c : curves) pts.insert(pts.end(), c.vertices.begin(), c.vertices.end());
  if (divisor)
    for (const auto& [p, m] : divisor->chips()) pts.push_back(p);
  if (pts.empty()) return {-2, -2, 2, 2};
  Viewport box{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    if (p.x < box.xmin) box.xmin = p.x;
    if (p.x > box.xmax) box.xmax = p.x;
    if (p.y < box.ymin) box.ymin = p.y;
    if (p.y > box.ymax) box.ymax = p.y;
  }
  Rational pad = std::max(box.xmax - box.xmin, box.ymax - box.ymin) / 4;
  if (pad < 1) pad = 1;
  return {box.xmin - pad, box.ymin - pad, box.xmax + pad, box.ymax + pad};
}

class Canvas {
 public:
  Canvas(const Viewport& box, const Rational& scale) : box_(box), scale_(scale) {}

  std::string x(const Rational& v) const { return decimal6((v - box_.xmin) * scale_); }
  std::string y(const Rational& v) const { return decimal6((box_.ymax - v) * scale_); }

  void line(const RationalPoint& a, const RationalPoint& b, const std::string& stroke, std::int64_t weight,
            const char* cls) {
    out_ << "  <line class=\"" << cls << "\" x1=\"" << x(a.x) << "\" y1=\"" << y(a.y) << "\" x2=\"" << x(b.x)
         << "\" y2=\"" << y(b.y) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << 2 * weight << "\"/>\n";
  }
  void dot(const RationalPoint& p, const Rational& r, const std::string& fill, const char* cls) {
    out_ << "  <circle class=\"" << cls << "\" cx=\"" << x(p.x) << "\" cy=\"" << y(p.y) << "\" r=\"" << decimal6(r)
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void text(const RationalPoint& p, const std::string& s) {
    out_ << "  <text x=\"" << x(p.x) << "\" y=\"" << y(p.y) << "\" font-size=\"12\">" << s << "</text>\n";
  }
  std::ostringstream& raw() { return out_; }

 private:
  Viewport box_;
  Rational scale_;
  std::ostringstream out_;
};

}  // namespace

std::string render_svg(const std::vector<TropicalCurve>& curves, const std::optional<Divisor>& divisor,
                       const RenderSpec& spec) {
  if (curves.empty()) throw Error(Errc::EmptyScene, "nothing to render");
  Viewport box = spec.viewport ? *spec.viewport : fit(curves, divisor);
  if (box.xmin >= box.xmax || box.ymin >= box.ymax) throw Error(Errc::InvalidInput, "empty viewport");
  if (spec.scale <= 0 || spec.strokes.empty()) throw Error(Errc::InvalidInput, "bad render settings");

  Canvas canvas(box, spec.scale);
  auto width = decimal6((box.xmax - box.xmin) * spec.scale);
  auto height = decimal6((box.ymax - box.ymin) * spec.scale);
  auto& out = canvas.raw();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    const auto& stroke = spec.strokes[k % spec.strokes.size()];
    out << " <g id=\"curve" << k << "\">\n";
    for (const auto& e : c.edges) {
      const auto& a = c.vertices[e.v[0]];
      const auto& b = c.vertices[e.v[1]];
      auto piece = clip(a, {b.x - a.x, b.y - a.y}, 0, Rational(1), box);
      if (piece) canvas.line(piece->first, piece->second, stroke, e.weight, "edge");
    }
    for (const auto& r : c.rays) {
      auto piece = clip(c.vertices[r.v], {Rational(r.dir.x), Rational(r.dir.y)}, 0, std::nullopt, box);
      if (piece) canvas.line(piece->first, piece->second, stroke, r.weight, "ray");
    }
    for (const auto& v : c.vertices) {
      if (v.x < box.xmin || v.x > box.xmax || v.y < box.ymin || v.y > box.ymax) continue;
      canvas.dot(v, 2, stroke, "vertex");
      if (spec.vertex_labels) canvas.text(v, "(" + to_string(v.x) + ", " + to_string(v.y) + ")");
    }
    out << " </g>\n";
  }

  if (divisor) {
    out << " <g id=\"divisor\">\n";
    for (const auto& [p, m] : divisor->chips()) {
      if (p.x < box.xmin || p.x > box.xmax || p.y < box.ymin || p.y > box.ymax) continue;
      canvas.dot(p, m > 0 ? 5 : 4, m > 0 ? spec.chip_fill : "#ffffff", "chip");
      if (spec.chip_labels && m != 1) canvas.text(p, std::to_string(m));
    }
    out << " </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace troplane
