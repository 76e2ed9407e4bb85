#include "billiards/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace billiards {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, int line) {
  s = trim(s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v))
    fail(line, "not a number: '" + std::string(s) + "'");
  return v;
}

template <typename Int>
Int to_int(std::string_view s, int line) {
  s = trim(s);
  Int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) fail(line, "not an integer: '" + std::string(s) + "'");
  return v;
}

Point to_point(std::string_view s, int line) {
  s = trim(s);
  const auto sep = s.find_first_of(" \t");
  if (sep == std::string_view::npos) fail(line, "a point needs two coordinates");
  return {to_double(s.substr(0, sep), line), to_double(s.substr(sep), line)};
}

std::vector<Point> to_points(std::string_view s, int line) {
  std::vector<Point> out;
  s = trim(s);
  while (!s.empty()) {
    const auto sep = s.find(';');
    out.push_back(to_point(s.substr(0, sep), line));
    if (sep == std::string_view::npos) break;
    s = trim(s.substr(sep + 1));
  }
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point(const Point& p) { return num(p[0]) + " " + num(p[1]); }

std::string points(const std::vector<Point>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += "; ";
    out += point(ps[i]);
  }
  return out;
}

void set_curve(CurveSpec& c, std::string_view key, std::string_view value, int line) {
  if (key == "kind") c.kind = std::string(value);
  else if (key == "from") c.from = to_point(value, line);
  else if (key == "to") c.to = to_point(value, line);
  else if (key == "center") c.center = to_point(value, line);
  else if (key == "radius") c.radius = to_double(value, line);
  else if (key == "start_angle") c.start_angle = to_double(value, line);
  else if (key == "sweep") c.sweep = to_double(value, line);
  else if (key == "points") c.points = to_points(value, line);
  else if (key == "tangents") c.tangents = to_points(value, line);
  else if (key == "interior") c.interior = std::string(value);
  else fail(line, "unknown cap key '" + std::string(key) + "'");
}

void write_curve(std::ostringstream& out, const char* section, const CurveSpec& c) {
  out << "\n[" << section << "]\n";
  out << "kind = " << c.kind << "\n";
  out << "from = " << point(c.from) << "\n";
  out << "to = " << point(c.to) << "\n";
  out << "center = " << point(c.center) << "\n";
  out << "radius = " << num(c.radius) << "\n";
  out << "start_angle = " << num(c.start_angle) << "\n";
  out << "sweep = " << num(c.sweep) << "\n";
  out << "points = " << points(c.points) << "\n";
  out << "tangents = " << points(c.tangents) << "\n";
  out << "interior = " << c.interior << "\n";
}

Vec2 vec(const Point& p) { return {p[0], p[1]}; }

Curve make_curve(const CurveSpec& c, Side side) {
  Curve curve = Curve::segment({0.0, 0.0}, {1.0, 0.0});
  if (c.kind == "segment") {
    curve = Curve::segment(vec(c.from), vec(c.to));
  } else if (c.kind == "arc") {
    curve = Curve::arc(vec(c.center), c.radius, c.start_angle, c.sweep);
  } else {
    std::vector<Vec2> ps, ts;
    for (const Point& p : c.points) ps.push_back(vec(p));
    for (const Point& t : c.tangents) ts.push_back(vec(t));
    curve = Curve::sampled(std::move(ps), std::move(ts));
  }
  if (c.interior == "left") return curve;
  if (c.interior == "right") return curve.with_interior(false);
  // Interior faces the other cap.
  const double inward_x = curve.normal_at(0.5 * curve.length()).x();
  const bool flip = side == Side::left ? inward_x < 0.0 : inward_x > 0.0;
  return flip ? curve.with_interior(false) : curve;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section == "cap_left") cfg.cap_left.emplace();
      else if (section == "cap_right") cfg.cap_right.emplace();
      else if (section != "table" && section != "run") fail(line_no, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (section == "table") {
      if (key == "kind") cfg.kind = std::string(value);
      else if (key == "length") cfg.length = to_double(value, line_no);
      else if (key == "width") cfg.width = to_double(value, line_no);
      else if (key == "radius") cfg.radius = to_double(value, line_no);
      else if (key == "wall_left_x") cfg.wall_left_x = to_double(value, line_no);
      else if (key == "wall_right_x") cfg.wall_right_x = to_double(value, line_no);
      else if (key == "flat") cfg.flat = std::string(value);
      else fail(line_no, "unknown table key '" + std::string(key) + "'");
    } else if (section == "cap_left") {
      set_curve(*cfg.cap_left, key, value, line_no);
    } else if (section == "cap_right") {
      set_curve(*cfg.cap_right, key, value, line_no);
    } else if (section == "run") {
      if (key == "eps") cfg.eps = to_double(value, line_no);
      else if (key == "n") cfg.n = to_int<int>(value, line_no);
      else if (key == "position_grid") cfg.position_grid = to_int<int>(value, line_no);
      else if (key == "angle_grid") cfg.angle_grid = to_int<int>(value, line_no);
      else if (key == "seed") cfg.seed = to_int<std::uint64_t>(value, line_no);
      else if (key == "out") cfg.out = std::string(value);
      else fail(line_no, "unknown run key '" + std::string(key) + "'");
    } else {
      fail(line_no, "key outside of any section");
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[table]\n";
  out << "kind = " << cfg.kind << "\n";
  out << "length = " << num(cfg.length) << "\n";
  out << "width = " << num(cfg.width) << "\n";
  out << "radius = " << num(cfg.radius) << "\n";
  out << "wall_left_x = " << num(cfg.wall_left_x) << "\n";
  out << "wall_right_x = " << num(cfg.wall_right_x) << "\n";
  out << "flat = " << cfg.flat << "\n";
  if (cfg.cap_left) write_curve(out, "cap_left", *cfg.cap_left);
  if (cfg.cap_right) write_curve(out, "cap_right", *cfg.cap_right);
  out << "\n[run]\n";
  if (cfg.eps) out << "eps = " << num(*cfg.eps) << "\n";
  if (cfg.n) out << "n = " << *cfg.n << "\n";
  out << "position_grid = " << cfg.position_grid << "\n";
  out << "angle_grid = " << cfg.angle_grid << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out = " << cfg.out << "\n";
  return out.str();
}

void validate(const RunConfig& cfg) {
  auto bad = [](const std::string& what) { throw ConfigError("config: " + what); };
  if (cfg.kind == "stadium") {
    if (!(cfg.length > 0.0) || !(cfg.width > 0.0)) bad("stadium length and width must be positive");
  } else if (cfg.kind == "mushroom") {
    if (!(cfg.length > 0.0)) bad("mushroom stalk length must be positive");
    if (!(cfg.radius >= 0.25)) bad("mushroom cap radius must be at least 1/4");
  } else if (cfg.kind == "custom") {
    if (!(cfg.wall_right_x > cfg.wall_left_x)) bad("walls must have positive length");
    if (cfg.flat != "none" && cfg.flat != "left" && cfg.flat != "right") bad("flat must be none, left or right");
    if (cfg.flat != "left" && !cfg.cap_left) bad("missing [cap_left]");
    if (cfg.flat != "right" && !cfg.cap_right) bad("missing [cap_right]");
    for (const auto* c : {&cfg.cap_left, &cfg.cap_right}) {
      if (!*c) continue;
      const CurveSpec& s = **c;
      if (s.kind != "segment" && s.kind != "arc" && s.kind != "sampled") bad("cap kind must be segment, arc or sampled");
      if (s.interior != "auto" && s.interior != "left" && s.interior != "right")
        bad("cap interior must be auto, left or right");
      if (s.kind == "arc" && (!(s.radius > 0.0) || s.sweep == 0.0)) bad("arc caps need a positive radius and a sweep");
      if (s.kind == "sampled" && (s.points.size() < 2 || s.points.size() != s.tangents.size()))
        bad("sampled caps need matching points and tangents");
    }
  } else {
    bad("table kind must be stadium, mushroom or custom");
  }
  if (cfg.eps && !(*cfg.eps > 0.0 && *cfg.eps < std::numbers::pi / 6)) bad("eps must lie in (0, pi/6)");
  if (cfg.n && *cfg.n < 0) bad("n must be nonnegative");
  if (cfg.position_grid < 1 || cfg.angle_grid < 1) bad("grids must be positive");
  if (cfg.out.empty()) bad("out must not be empty");
}

Table build_table(const RunConfig& cfg) {
  validate(cfg);
  try {
    std::optional<Table> table;
    if (cfg.kind == "stadium") {
      table = make_stadium(cfg.length, cfg.width);
    } else if (cfg.kind == "mushroom") {
      table = make_mushroom(cfg.length, cfg.radius);
    } else {
      const double xl = cfg.wall_left_x, xr = cfg.wall_right_x;
      std::optional<Side> flat;
      if (cfg.flat == "left") flat = Side::left;
      if (cfg.flat == "right") flat = Side::right;
      Curve left = flat == Side::left ? Curve::segment({xl, 1.0}, {xl, 0.0}) : make_curve(*cfg.cap_left, Side::left);
      Curve right =
          flat == Side::right ? Curve::segment({xr, 0.0}, {xr, 1.0}) : make_curve(*cfg.cap_right, Side::right);
      table.emplace(xl, xr, std::move(left), std::move(right), cfg.eps.value_or(std::numbers::pi / 6 - eps_margin),
                    flat);
    }
    if (cfg.eps && *cfg.eps != table->eps()) return table->with_eps(*cfg.eps);
    return *table;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace billiards
