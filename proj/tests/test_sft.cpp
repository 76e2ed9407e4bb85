#include "doctest.h"

#include "billiards/errors.hpp"
#include "billiards/freearc.hpp"
#include "billiards/sft.hpp"
#include "support.hpp"

#include <Eigen/LU>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

using namespace billiards;
using boost::multiprecision::cpp_bin_float_50;

namespace {

// Plain bisection on x^(N+2) - 2x^(N+1) - x^N + 2, the polynomial form of the
// defining equation, carried out in long double.
long double polynomial_root(int N) {
  auto p = [N](long double x) { return std::pow(x, N + 2) - 2 * std::pow(x, N + 1) - std::pow(x, N) + 2; };
  long double lo = 2.0L, hi = 2.5L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("adjacency matrix") {
  const Matrix<double> a = adjacency(3);
  CHECK(a.rows() == 7);
  CHECK(a.row(state_index(3, 0)).sum() == 3);
  for (int s : {1, 2, -1, -2}) CHECK(a.row(state_index(3, s)).sum() == 2);
  CHECK(a.row(state_index(3, 3)).sum() == 1);
  CHECK(a(state_index(3, -2), state_index(3, -3)) == 1);
  CHECK(a(state_index(3, 2), state_index(3, -3)) == 0);
  CHECK_THROWS_AS(adjacency(0), DomainError);
}

TEST_CASE("characteristic polynomial for N = 1") {
  const Matrix<double> a = adjacency(1);
  for (double x : {-1.7, 0.3, 1.1, 2.0, 3.5}) {
    const Matrix<double> m = x * Matrix<double>::Identity(3, 3) - a;
    CHECK(m.determinant() == doctest::Approx(x * x * x - x * x - 2 * x));
  }
}

TEST_CASE("spectral radius fixtures") {
  Matrix<double> one(1, 1);
  one << 1;
  CHECK(spectral_radius(one) == doctest::Approx(1.0));
  Matrix<double> golden(2, 2);
  golden << 1, 1, 1, 0;
  CHECK(spectral_radius(golden) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  Matrix<double> periodic(2, 2);
  periodic << 0, 2, 1, 0;
  CHECK_THROWS_AS(spectral_radius(periodic, 1e-12, 1000), NoConvergence);
  Matrix<double> negative(1, 1);
  negative << -1;
  CHECK_THROWS_AS(spectral_radius(negative), DomainError);
}

TEST_CASE("root oracles") {
  CHECK(largest_root_eq0(1) == 2.0);
  CHECK(std::abs(largest_root_eq0(2) - 2.26953084208114277) < 1e-15);
  CHECK(std::abs(rome_largest_zero(1) - 2.0) < 1e-15);
  for (int N = 1; N <= 30; ++N) {
    const double expected = static_cast<double>(polynomial_root(N));
    CHECK(std::abs(largest_root_eq0(N) - expected) < 1e-14);
    CHECK(std::abs(rome_largest_zero(N) - expected) < 1e-14);
  }
}

TEST_CASE("the three computations agree") {
  for (int N = 1; N <= 20; ++N) {
    const double a = spectral_radius(adjacency(N));
    const double b = rome_largest_zero(N);
    const double c = largest_root_eq0(N);
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(std::abs(b - c) < 1e-9);
    CHECK(std::abs(a - c) < 1e-9);
  }
}

TEST_CASE("roots increase strictly towards 1 + sqrt 2") {
  cpp_bin_float_50 prev = 0;
  for (int N = 1; N <= 60; ++N) {
    const cpp_bin_float_50 r = largest_root_eq0<cpp_bin_float_50>(N);
    CHECK(r > prev);
    CHECK(r < 1 + sqrt(cpp_bin_float_50(2)));
    prev = r;
  }
  CHECK(std::abs(largest_root_eq0(60) - (1 + std::sqrt(2.0))) < 1e-10);
  CHECK_THROWS_AS(largest_root_eq0(0), DomainError);
  CHECK_THROWS_AS(rome_largest_zero(0), DomainError);
}

TEST_CASE("subshift entropy by every method") {
  for (int N : {1, 2, 5}) {
    const double expected = std::log(largest_root_eq0(N));
    CHECK(subshift_entropy(N, BoundMethod::eq0_root) == doctest::Approx(expected));
    CHECK(subshift_entropy(N, BoundMethod::rome) == doctest::Approx(expected));
    CHECK(subshift_entropy(N, BoundMethod::spectral) == doctest::Approx(expected));
    CHECK(subshift_entropy(N, BoundMethod::word_count) == doctest::Approx(expected).epsilon(0.05));
  }
  CHECK(to_string(BoundMethod::eq0_root) == "eq0-root");
  CHECK(to_string(BoundMethod::word_count) == "word-count");
}

TEST_CASE("stadium certificates") {
  const EntropyCertificate yes = stadium_certificate(1.8, 1.0);
  CHECK(yes.certified);
  CHECK(yes.N == 1);
  CHECK(yes.bound == doctest::Approx(std::log(2.0)));
  CHECK_FALSE(yes.rigorous_geometry);
  CHECK_FALSE(yes.chain.empty());
  CHECK_FALSE(stadium_certificate(1.732, 1.0).certified);
  CHECK_FALSE(stadium_certificate(std::sqrt(3.0), 1.0).certified);
  CHECK_FALSE(stadium_certificate(1.0, 1.0).certified);
  CHECK(stadium_certificate(3.6, 2.0).certified);  // same shape as 1.8 x 1
  CHECK_THROWS_AS(stadium_certificate(make_mushroom(1.0, 0.5)), ShapeUnsupported);
  CHECK(stadium_certificate(make_stadium(1.8, 1.0)).certified);
}

TEST_CASE("mushroom certificates") {
  const EntropyCertificate m = mushroom_certificate(1.0, 0.5);
  CHECK(m.certified);
  CHECK(m.table_class == TableClass::semistadium);
  CHECK(m.bound == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(mushroom_certificate(0.87, 0.5).certified);
  CHECK_FALSE(mushroom_certificate(0.86, 0.5).certified);
  for (double t : {0.25, 0.3, 0.5, 0.8, 1.5, 4.0}) CHECK(mushroom_certificate(2 * t, t).certified);
  CHECK_THROWS_AS(mushroom_certificate(1.0, 0.2), DomainError);
}

TEST_CASE("generic bounds") {
  const EntropyCertificate none = entropy_lower_bound(1.0, 0.3, TableClass::full);
  CHECK(none.N < 1);
  CHECK_FALSE(none.certified);
  CHECK(none.bound == 0.0);

  const EntropyCertificate e = entropy_lower_bound(10.0, 0.4, TableClass::full);
  CHECK(e.N == max_symbol_bound(10.0, 0.4, TableClass::full));
  CHECK(e.bound == doctest::Approx(std::log(largest_root_eq0(e.N))));
  CHECK(e.certified);

  CHECK(limit_bound(TableClass::full) == doctest::Approx(std::log(1 + std::sqrt(2.0))));
  CHECK(limit_bound(TableClass::semistadium) == doctest::Approx(0.5 * std::log(1 + std::sqrt(2.0))));
}

TEST_CASE("semistadium bounds are half of the bound of the doubled table") {
  testing_support::Rng rng(50);
  for (int i = 0; i < 200; ++i) {
    const double ell = rng.uniform(0.5, 40), eps = rng.uniform(0.05, 0.5);
    const EntropyCertificate semi = entropy_lower_bound(ell, eps, TableClass::semistadium);
    CHECK(semi.N == max_symbol_bound(ell, eps, TableClass::semistadium));
    if (semi.N < 1) {
      CHECK_FALSE(semi.certified);
      continue;
    }
    const EntropyCertificate full = entropy_lower_bound(2 * ell, eps, TableClass::full);
    CHECK(full.N == semi.N);
    CHECK(semi.bound == doctest::Approx(0.5 * full.bound).epsilon(1e-15));
    CHECK(semi.bound <= limit_bound(TableClass::semistadium));
  }
}
