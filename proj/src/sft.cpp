#include "billiards/sft.hpp"

#include "billiards/coding.hpp"
#include "billiards/freearc.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

}  // namespace

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::eq0_root: return "eq0-root";
    case BoundMethod::rome: return "rome";
    case BoundMethod::spectral: return "spectral";
    case BoundMethod::word_count: return "word-count";
  }
  return "?";
}

double subshift_entropy(int N, BoundMethod method) {
  switch (method) {
    case BoundMethod::eq0_root: return std::log(largest_root_eq0(N));
    case BoundMethod::rome: return std::log(rome_largest_zero(N));
    case BoundMethod::spectral: return std::log(spectral_radius(adjacency(N)));
    case BoundMethod::word_count: {
      constexpr int n = 40;
      return std::log(count_words(N, n).convert_to<double>()) / n;
    }
  }
  return 0.0;
}

EntropyCertificate entropy_lower_bound_at(int N, double ell, double eps, TableClass table_class) {
  if (!(ell > 0.0)) throw DomainError("entropy bound: l must be positive");
  if (!(eps > 0.0 && eps < pi / 6)) throw DomainError("entropy bound: eps must lie in (0, pi/6)");

  const bool semi = table_class == TableClass::semistadium;
  EntropyCertificate cert;
  cert.ell = ell;
  cert.eps = eps;
  cert.N = N;
  cert.table_class = table_class;
  cert.method = BoundMethod::eq0_root;

  const double reach = (semi ? 2.0 : 1.0) * ell * std::tan(eps);
  const char* reach_name = semi ? "2 l tan(eps)" : "l tan(eps)";
  if (N < 1) {
    cert.chain.push_back(std::string(reach_name) + fmt(" = %.12g < 2: no symbol bound N >= 1", reach));
    return cert;
  }
  if (N > max_symbol_bound(ell, eps, table_class)) {
    cert.chain.push_back(std::string(reach_name) + fmt(" = %.12g < N + 1 = %.12g", reach, N + 1.0));
    return cert;
  }

  cert.root = largest_root_eq0(N);
  cert.chain.push_back(std::string(reach_name) + fmt(" = %.12g >= N + 1 = %.12g", reach, N + 1.0));
  cert.chain.push_back("every admissible word over -N..N is realized by a billiard orbit");
  cert.chain.push_back(fmt("subshift entropy = log x, x = %.12g the largest root of x^2 - 2x - 1 = -2x^-N",
                           cert.root));
  cert.bound = std::log(cert.root);
  if (semi) {
    cert.chain.push_back("semistadium: every symbol costs two collisions, bound halved");
    cert.bound *= 0.5;
  }
  cert.chain.push_back(fmt("h >= %.12g", cert.bound));
  cert.certified = true;
  return cert;
}

EntropyCertificate entropy_lower_bound(double ell, double eps, TableClass table_class) {
  if (!(ell > 0.0)) throw DomainError("entropy bound: l must be positive");
  if (!(eps > 0.0 && eps < pi / 6)) throw DomainError("entropy bound: eps must lie in (0, pi/6)");
  return entropy_lower_bound_at(max_symbol_bound(ell, eps, table_class), ell, eps, table_class);
}

EntropyCertificate stadium_certificate(double length, double width) {
  if (!(length > 0.0) || !(width > 0.0)) throw DomainError("stadium: length and width must be positive");
  const double ratio = length / width;
  // l tan(eps) > 3/2 with tan(eps) = 1/sqrt 3 and l = l' + sqrt(3)/2.
  const double threshold = sqrt3 * (1.5 - 0.5);

  EntropyCertificate cert;
  cert.table_class = TableClass::full;
  cert.eps = pi / 6;
  cert.ell = ratio + 0.5 * sqrt3;
  cert.chain.push_back(fmt("width normalized to 1: l' = %.12g", ratio));
  cert.chain.push_back("eps -> pi/6, tan(eps) = 1/sqrt(3)");
  cert.chain.push_back(fmt("l = l' + sqrt(3)/2 = %.12g", cert.ell));
  cert.chain.push_back("two stacked cap copies span 3/2 vertically: need l tan(eps) > 3/2");
  if (!(ratio > threshold)) {
    cert.chain.push_back(fmt("l' = %.12g <= sqrt(3) = %.12g", ratio, threshold));
    return cert;
  }
  cert.chain.push_back(fmt("l' = %.12g > sqrt(3) = %.12g", ratio, threshold));
  cert.N = 1;
  cert.root = largest_root_eq0(1);
  cert.bound = std::log(cert.root);
  cert.chain.push_back(fmt("N = 1: largest root of x^2 - 2x - 1 = -2/x is %.12g, h >= log 2", cert.root));
  cert.certified = true;
  return cert;
}

EntropyCertificate stadium_certificate(const Table& table) {
  if (table.table_class() != TableClass::full) throw ShapeUnsupported("stadium certificate: not a full stadium");
  const double tol = 1e-9;
  auto semicircle = [&](const Curve& c, double x) {
    return c.kind() == Curve::Kind::arc && std::abs(c.radius() - 0.5) <= tol && std::abs(c.center().x() - x) <= tol &&
           std::abs(c.center().y() - 0.5) <= tol;
  };
  if (!semicircle(table.cap(Side::left), table.wall_left_x()) ||
      !semicircle(table.cap(Side::right), table.wall_right_x()))
    throw ShapeUnsupported("stadium certificate: caps are not the semicircles of a stadium");
  return stadium_certificate(table.wall_right_x() - table.wall_left_x(), 1.0);
}

EntropyCertificate mushroom_certificate(double stalk, double radius) {
  if (!(stalk > 0.0)) throw DomainError("mushroom: stalk length must be positive");
  if (!(radius >= 0.25)) throw DomainError("mushroom: cap radius must be at least 1/4");
  // t sin(eps) = 1/4, so tan(eps) = 1/s with s = sqrt(16t^2 - 1).
  const double s = std::sqrt(16.0 * radius * radius - 1.0);
  // 2 l tan(eps) > 3/2 with l = l' + s/4.
  const double threshold = s * (0.75 - 0.25);

  EntropyCertificate cert;
  cert.table_class = TableClass::semistadium;
  cert.eps = std::atan2(1.0, s);
  cert.ell = stalk + 0.25 * s;
  cert.chain.push_back(fmt("stalk height normalized to 1: l' = %.12g, t = %.12g", stalk, radius));
  cert.chain.push_back(fmt("t sin(eps) = 1/4: tan(eps) = 1/sqrt(16t^2 - 1) = 1/%.12g", s));
  cert.chain.push_back(fmt("l = l' + sqrt(16t^2 - 1)/4 = %.12g", cert.ell));
  cert.chain.push_back("two stacked cap copies span 3/2 vertically: need 2 l tan(eps) > 3/2");
  if (!(stalk > threshold)) {
    cert.chain.push_back(fmt("l' = %.12g <= sqrt(16t^2 - 1)/2 = %.12g", stalk, threshold));
    return cert;
  }
  cert.chain.push_back(fmt("l' = %.12g > sqrt(16t^2 - 1)/2 = %.12g", stalk, threshold));
  cert.N = 1;
  cert.root = largest_root_eq0(1);
  cert.bound = 0.5 * std::log(cert.root);
  cert.chain.push_back("semistadium: every symbol costs two collisions, bound halved");
  cert.chain.push_back(fmt("N = 1: root %.12g, h >= (1/2) log 2", cert.root));
  cert.certified = true;
  return cert;
}

double limit_bound(TableClass table_class) {
  const double full = std::log(1.0 + std::numbers::sqrt2);
  return table_class == TableClass::semistadium ? 0.5 * full : full;
}

}  // namespace billiards
