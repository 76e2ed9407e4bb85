#include "billiards/report.hpp"

#include "billiards/errors.hpp"
#include "billiards/unfolding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace billiards {

namespace {

constexpr double px_per_unit = 200.0;
constexpr double margin = 0.25;
constexpr int curve_samples = 64;

struct Canvas {
  double x0, y_top;  // world coordinates of the top-left corner

  std::string x(double wx) const { return format_number((wx - x0) * px_per_unit); }
  std::string y(double wy) const { return format_number((y_top - wy) * px_per_unit); }
};

std::string path_of(const Canvas& cv, const Curve& c, int level) {
  const int n = c.kind() == Curve::Kind::segment ? 1 : curve_samples;
  std::string d;
  for (int i = 0; i <= n; ++i) {
    const Vec2 p = LiftFrame::lift(level, c.point_at(c.length() * i / n));
    d += (i == 0 ? "M " : " L ") + cv.x(p.x()) + " " + cv.y(p.y());
  }
  return d;
}

void draw_table(std::ostringstream& out, const Canvas& cv, const Table& table, int level) {
  for (const ArcId id : {ArcId::gamma1, ArcId::gamma2, ArcId::gamma3, ArcId::gamma4, ArcId::vertical_cap}) {
    if (!table.has_arc(id)) continue;
    const char* stroke = table.is_curved_cap(id) ? "#c0392b" : "#222222";
    out << "  <path d=\"" << path_of(cv, table.curve(id), level) << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
  }
  for (const Gap& g : table.gaps())
    out << "  <path d=\"" << path_of(cv, g.segment, level)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
}

int next_level(int level, ArcId wall) {
  const bool odd = (level & 1) != 0;
  if (wall == ArcId::gamma1) return odd ? level - 1 : level + 1;
  return odd ? level + 1 : level - 1;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("cannot write '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

std::string orbit_csv(const Table& table, const std::vector<PhasePoint>& orbit) {
  std::ostringstream out;
  out << "step,arc_id,r,phi,x,y\n";
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const PhasePoint& p = orbit[i];
    const Vec2 q = table.position(p);
    out << i << ',' << to_string(p.arc) << ',' << format_number(p.r) << ',' << format_number(p.phi) << ','
        << format_number(q.x()) << ',' << format_number(q.y()) << '\n';
  }
  return out.str();
}

std::string orbit_svg(const Table& table, const std::vector<PhasePoint>& orbit, bool unfolded) {
  // Orbit points in drawing coordinates, and the levels they visit.
  std::vector<Vec2> pts;
  int level = 0, lo = 0, hi = 0;
  for (const PhasePoint& p : orbit) {
    const Vec2 q = table.position(p);
    pts.push_back(unfolded ? LiftFrame::lift(level, q) : q);
    if (unfolded && (p.arc == ArcId::gamma1 || p.arc == ArcId::gamma2)) {
      level = next_level(level, p.arc);
      lo = std::min(lo, level);
      hi = std::max(hi, level);
    }
  }

  Box2 box = table.wall_bottom().bounds();
  for (const ArcId id : {ArcId::gamma2, ArcId::gamma3, ArcId::gamma4, ArcId::vertical_cap})
    if (table.has_arc(id)) box.extend(table.curve(id).bounds());
  const double y_max = box.max().y() - lo;  // level lo is the highest copy
  const double y_min = box.min().y() - hi;
  const Canvas cv{box.min().x() - margin, y_max + margin};
  const double width = (box.max().x() - box.min().x() + 2 * margin) * px_per_unit;
  const double height = (y_max - y_min + 2 * margin) * px_per_unit;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(width) << ' ' << format_number(height)
      << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int k = lo; k <= hi; ++k) draw_table(out, cv, table, k);
  if (!pts.empty()) {
    out << "  <polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << cv.x(pts[i].x()) << ',' << cv.y(pts[i].y());
    }
    out << "\"/>\n";
    for (const Vec2& p : pts)
      out << "  <circle cx=\"" << cv.x(p.x()) << "\" cy=\"" << cv.y(p.y()) << "\" r=\"3\" fill=\"#1f5fa8\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string format_certificate(const EntropyCertificate& c, bool bits) {
  std::ostringstream out;
  out << "class: " << to_string(c.table_class) << "\n";
  out << "l: " << format_number(c.ell) << "\n";
  out << "eps: " << format_number(c.eps) << "\n";
  out << "N: " << c.N << "\n";
  out << "root: " << format_number(c.root) << "\n";
  out << "bound: " << format_number(c.bound) << " nats\n";
  if (bits) out << "bound_bits: " << format_number(c.bound / std::numbers::ln2) << " bits\n";
  out << "method: " << to_string(c.method) << "\n";
  out << "rigorous_geometry: " << (c.rigorous_geometry ? "true" : "false") << "\n";
  out << "chain:\n";
  for (const std::string& step : c.chain) out << "  - " << step << "\n";

  if (!c.certified) {
    out << "not certified\n";
    return out.str();
  }
  const std::string half = c.table_class == TableClass::semistadium ? "½ " : "";
  if (c.root == 2.0) out << "certified: h ≥ " << half << "log 2\n";
  else out << "certified: h ≥ " << half << "log " << format_number(c.root) << "\n";
  return out.str();
}

std::string format_free_arc(const FreeArcCertificate& c) {
  std::ostringstream out;
  out << "arc: " << to_string(c.arc) << "\n";
  out << "eps: " << format_number(c.eps) << "\n";
  out << "regular: " << (c.regular ? "true" : "false") << "\n";
  if (c.markers_found)
    out << "markers: p+ = " << format_number(c.p_plus) << ", p- = " << format_number(c.p_minus) << "\n";
  else
    out << "markers: none (normal arguments do not reach +-eps)\n";
  out << "disjoint_from_walls: " << (c.disjoint_from_walls ? "true" : "false") << "\n";
  out << "position_step: " << format_number(c.position_step) << "\n";
  out << "angle_step: " << format_number(c.angle_step) << "\n";
  out << "samples_checked: " << c.samples_checked << "\n";
  out << "rigorous: " << (c.rigorous ? "true" : "false") << "\n";
  out << "failures: " << c.failures.size() << "\n";
  constexpr std::size_t shown = 20;
  for (std::size_t i = 0; i < c.failures.size() && i < shown; ++i) {
    const FreeArcWitness& w = c.failures[i];
    out << "  witness r = " << format_number(w.r) << ", theta = " << format_number(w.angle) << ": " << w.reason
        << "\n";
  }
  if (c.failures.size() > shown) out << "  ... " << c.failures.size() - shown << " more\n";
  out << (c.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace billiards
