// Acceptance checks: one PASS/FAIL line per criterion, with the tolerance and
// the runtime limit it was judged against.

#include "billiards/cli.hpp"
#include "billiards/coding.hpp"
#include "billiards/freearc.hpp"
#include "billiards/geometry.hpp"
#include "billiards/sft.hpp"
#include "billiards/shooting.hpp"
#include "support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace billiards;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_ms <= 0.0 || ms < limit_ms;
  const bool pass = r.ok && in_time;
  failures += !pass;
  char timing[96];
  if (limit_ms > 0.0) std::snprintf(timing, sizeof timing, "%.3f ms (limit %g ms)", ms, limit_ms);
  else std::snprintf(timing, sizeof timing, "%.3f ms", ms);
  std::printf("[%s] %2d %s: %s; %s\n", pass ? "PASS" : "FAIL", id, name, r.detail.c_str(), timing);
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// Every admissible word of the given length over {-N..N}.
std::vector<SymbolWord> admissible_words(int N, int length) {
  std::vector<SymbolWord> out;
  const TransitionTable table(N);
  SymbolWord w{{}, N};
  std::function<void()> grow = [&] {
    if (static_cast<int>(w.symbols.size()) == length) {
      out.push_back(w);
      return;
    }
    for (int s = -N; s <= N; ++s) {
      if (!w.symbols.empty() && !table.allows(w.symbols.back(), s)) continue;
      w.symbols.push_back(s);
      grow();
      w.symbols.pop_back();
    }
  };
  grow();
  return out;
}

}  // namespace

int main() {
  criterion(1, "closed form root for N = 1", 1.0, [] {
    const double r = largest_root_eq0(1);
    const double err = std::abs(r - 2.0);
    return Outcome{err <= 1e-12, "|root(1) - 2| = " + fmt("%.3g", err) + " (tol 1e-12)"};
  });

  criterion(2, "roots increase to 1 + sqrt 2", 10.0, [] {
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    bool strict = true;
    Quad prev = 0;
    for (int N = 1; N <= 60; ++N) {
      const Quad r = largest_root_eq0<Quad>(N);
      strict = strict && r > prev;
      prev = r;
    }
    const double gap = std::abs(largest_root_eq0(60) - (1.0 + std::sqrt(2.0)));
    return Outcome{strict && gap < 1e-10, std::string(strict ? "strictly increasing" : "NOT strictly increasing") +
                                              " for N = 1..60 at 113-bit precision, |root(60) - (1 + sqrt 2)| = " +
                                              fmt("%.3g", gap) + " (tol 1e-10)"};
  });

  criterion(3, "spectral radius, zero of the series and root agree", 100.0, [] {
    double worst = 0.0;
    for (int N = 1; N <= 20; ++N) {
      const double a = spectral_radius(adjacency(N)), b = rome_largest_zero(N), c = largest_root_eq0(N);
      worst = std::max({worst, std::abs(a - b), std::abs(b - c), std::abs(a - c)});
    }
    return Outcome{worst <= 1e-9, "max pairwise difference over N = 1..20 is " + fmt("%.3g", worst) + " (tol 1e-9)"};
  });

  criterion(4, "word-count growth for N = 1", 1000.0, [] {
    bool ok = true;
    double worst = 0.0;
    for (int n = 1; n <= 40; ++n) {
      const double a = count_words(1, n).convert_to<double>();
      const double dev = std::abs(std::log(a) / n - std::log(2.0));
      worst = std::max(worst, dev * n);
      ok = ok && dev <= 2.0 * std::log(3.0) / n;
    }
    long long brute[4] = {0, 0, 0, 0};
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> w(n, -1);
      for (;;) {
        brute[n] += is_admissible({w, 1});
        int i = 0;
        while (i < n && w[i] == 1) w[i++] = -1;
        if (i == n) break;
        ++w[i];
      }
    }
    const bool spots = count_words(1, 1) == 3 && count_words(1, 2) == 5 && count_words(1, 3) == 11 &&
                       brute[1] == 3 && brute[2] == 5 && brute[3] == 11;
    return Outcome{ok && spots, "max n|(1/n) log a_n - log 2| = " + fmt("%.4f", worst) + " (tol 2 log 3 = " +
                                    fmt("%.4f", 2 * std::log(3.0)) + "), a_1..a_3 = 3, 5, 11 " +
                                    (spots ? "match" : "DO NOT match") + " enumeration"};
  });

  criterion(5, "stadium threshold", 10.0, [] {
    const CliRun yes = cli({"bound", "--stadium", "1.8", "1.0"});
    const CliRun no = cli({"bound", "--stadium", "1.732", "1.0"});
    const bool ok = yes.code == 0 && yes.out.find("certified: h ≥ log 2") != std::string::npos && no.code == 3 &&
                    no.out.find("not certified") != std::string::npos;
    return Outcome{ok, "1.8 x 1 exit " + std::to_string(yes.code) + " (want 0, h >= log 2), 1.732 x 1 exit " +
                           std::to_string(no.code) + " (want 3)"};
  });

  criterion(6, "mushroom threshold", 10.0, [] {
    const bool at087 = mushroom_certificate(0.87, 0.5).certified;
    const bool at086 = mushroom_certificate(0.86, 0.5).certified;
    bool diameter = true;
    for (double t : {0.25, 0.3, 0.5, 0.75, 1.0, 2.0, 5.0}) diameter = diameter && mushroom_certificate(2 * t, t).certified;
    return Outcome{at087 && !at086 && diameter,
                   std::string("t = 0.5: l' = 0.87 ") + (at087 ? "certified" : "refused") + ", l' = 0.86 " +
                       (at086 ? "certified" : "refused") + "; stalk = cap diameter " +
                       (diameter ? "certified for all 7 radii" : "refused somewhere")};
  });

  criterion(7, "every admissible length-5 word is realized", 60000.0, [] {
    const Table t = make_stadium(4.0, 1.0);
    const int N = max_symbol_bound(t.ell(), t.eps(), t.table_class());
    const double reach = t.ell() * std::tan(t.eps());
    if (N != 1 || reach < 2.0) return Outcome{false, "stadium 4 x 1 does not give N = 1"};
    int done = 0, total = 0;
    std::string first_bad;
    for (const SymbolWord& w : admissible_words(1, 5)) {
      ++total;
      try {
        const ItineraryPlan plan = plan_itinerary(w);
        const auto orbit = realize_itinerary(t, plan.level_differences, t.eps(), N);
        const SymbolWord coded = encode(t, orbit, N);
        const std::vector<int> window(coded.symbols.begin() + static_cast<std::ptrdiff_t>(plan.offset),
                                      coded.symbols.begin() + static_cast<std::ptrdiff_t>(plan.offset + 5));
        if (coded == plan.padded && window == w.symbols) ++done;
        else if (first_bad.empty()) first_bad = to_string(w);
      } catch (const Error& e) {
        if (first_bad.empty()) first_bad = to_string(w) + " (" + e.what() + ")";
      }
    }
    return Outcome{done == total && total == 43,
                   std::to_string(done) + " of " + std::to_string(total) + " words realized and re-encoded exactly" +
                       " (l tan eps = " + fmt("%.4f", reach) + ")" + (first_bad.empty() ? "" : ", first failure " + first_bad)};
  });

  criterion(8, "reflection law on arc and sampled caps", 5000.0, [] {
    testing_support::Rng rng(2024);
    const Table tables[2] = {make_stadium(3.0, 1.0), testing_support::sampled_stadium(3.0)};
    double specular = 0.0, reversal = 0.0, involution = 0.0;
    int done = 0;
    for (int i = 0; done < 10000; ++i) {
      const Table& t = tables[i % 2];
      const ArcId arc = rng.uniform() < 0.5 ? ArcId::gamma3 : ArcId::gamma4;
      const PhasePoint p{arc, rng.uniform(0.01, 0.99) * t.curve(arc).length(), rng.uniform(-1.2, 1.2)};
      std::pair<PhasePoint, TrajectorySegment> step;
      try {
        step = next_collision(t, p);
      } catch (const Error&) {
        continue;
      }
      const auto& [q, seg] = step;
      const Vec2 din = (seg.to - seg.from).normalized(), dout = t.outgoing_direction(q);
      const Vec2 n = t.curve(q.arc).normal_at(q.r), tan = t.curve(q.arc).tangent_at(q.r);
      specular = std::max({specular, std::abs(din.dot(n) + dout.dot(n)), std::abs(din.dot(tan) - dout.dot(tan))});
      const Vec2 expect = reflect(din, n);
      specular = std::max(specular, (expect - dout).norm());

      std::pair<PhasePoint, TrajectorySegment> back;
      try {
        back = next_collision(t, t.phase_point(q.arc, q.r, -din));
      } catch (const Error&) {
        reversal = INFINITY;
        continue;
      }
      reversal = std::max(reversal, (t.position(back.first) - t.position(p)).norm());
      reversal = std::max(reversal, std::abs(back.first.phi + p.phi));

      const double theta = rng.uniform(-0.5, 0.5);
      const double a = rng.uniform(-0.12, 0.12);
      if (std::abs(reflect_argument(theta, a)) < std::numbers::pi / 6)
        involution = std::max(involution, std::abs(reflect_argument(reflect_argument(theta, a), a) - theta));
      ++done;
    }
    const bool ok = specular <= 1e-10 && reversal <= 1e-9 && involution <= 1e-9;
    return Outcome{ok, "10000 reflections: specular residual " + fmt("%.3g", specular) + " (tol 1e-10), reversal " +
                           fmt("%.3g", reversal) + " and involution " + fmt("%.3g", involution) + " (tol 1e-9)"};
  });

  criterion(9, "semistadium bound is half the bound of the doubled table", 10.0, [] {
    int checked = 0;
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const double ell = 5.0 + 1.7 * i, eps = 0.2 + 0.02 * (i % 10);
      const EntropyCertificate semi = entropy_lower_bound(ell, eps, TableClass::semistadium);
      // The doubled table of length 2l is a full table with the same N.
      const int n_semi = max_symbol_bound(2 * ell, eps, TableClass::full);
      ok = ok && semi.N == n_semi && n_semi >= 1;
      const EntropyCertificate full = entropy_lower_bound(2 * ell, eps, TableClass::full);
      ok = ok && full.N == semi.N;
      const double diff = std::abs(semi.bound - 0.5 * full.bound);
      worst = std::max(worst, diff);
      ok = ok && diff <= 1e-15 && semi.certified;
      ++checked;
    }
    return Outcome{ok, std::to_string(checked) + " (l, eps) pairs, max |semi - full/2| = " + fmt("%.3g", worst) +
                           " (tol 1e-15)"};
  });

  criterion(10, "byte-identical CLI output on repeated runs", 0.0, [] {
    const std::vector<std::vector<std::string>> commands{
        {"bound", "--config", fixture("stadium.cfg"), "--bits"},
        {"bound", "--config", fixture("mushroom.cfg")},
        {"bound", "--config", fixture("semistadium_arc.cfg")},
        {"realize", "--config", fixture("stadium.cfg"), "--", "0", "1", "0", "-1"},
        {"realize", "--config", fixture("semistadium_arc.cfg"), "--unfolded", "--", "1", "0", "-1"},
        {"verify", "--config", fixture("stadium.cfg")},
        {"verify", "--config", fixture("reentrant.cfg")},
        {"verify", "--config", fixture("sampled.cfg")},
        {"count", "--config", fixture("mushroom.cfg"), "--nmax", "20"},
        {"count", "--config", fixture("stadium.cfg")},
        {"simulate", "--config", fixture("stadium.cfg"), "--steps", "200"},
        {"simulate", "--config", fixture("sampled.cfg"), "--unfolded"},
        {"simulate", "--config", fixture("flat_full.cfg"), "--start", "G4", "0.2", "0.3"},
    };
    const fs::path root = fs::temp_directory_path() / "billiards_acceptance";
    fs::remove_all(root);
    int same = 0, files = 0;
    std::string first_diff;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      CliRun runs[2];
      fs::path dirs[2];
      for (int k = 0; k < 2; ++k) {
        dirs[k] = root / (std::to_string(i) + (k ? "b" : "a"));
        std::vector<std::string> args = commands[i];
        args.insert(args.begin() + 1, {"--out", dirs[k].string()});
        runs[k] = cli(args);
      }
      bool eq = runs[0].code == runs[1].code && runs[0].out == runs[1].out && runs[0].err == runs[1].err;
      if (fs::exists(dirs[0]))
        for (const auto& e : fs::directory_iterator(dirs[0])) {
          ++files;
          eq = eq && read(e.path()) == read(dirs[1] / e.path().filename());
        }
      same += eq;
      if (!eq && first_diff.empty()) first_diff = commands[i][0];
    }
    fs::remove_all(root);
    const int total = static_cast<int>(commands.size());
    return Outcome{same == total, std::to_string(same) + " of " + std::to_string(total) + " commands identical (" +
                                      std::to_string(files) + " files compared)" +
                                      (first_diff.empty() ? "" : ", first difference in " + first_diff)};
  });

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
