#pragma once

#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace billiards {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Row/column of `symbol` in the adjacency matrix. States are ordered
/// 0, 1, ..., N, -1, ..., -N.
inline int state_index(int N, int symbol) { return symbol >= 0 ? symbol : N - symbol; }

/// 0/1 adjacency matrix of the subshift with symbols -N..N.
template <typename Scalar = double>
Matrix<Scalar> adjacency(int N) {
  if (N < 1) throw DomainError("adjacency: N must be at least 1");
  Matrix<Scalar> m = Matrix<Scalar>::Zero(2 * N + 1, 2 * N + 1);
  m(0, state_index(N, 0)) = Scalar(1);
  m(0, state_index(N, 1)) = Scalar(1);
  m(0, state_index(N, -1)) = Scalar(1);
  for (int i = 1; i <= N; ++i) {
    for (const int sign : {1, -1}) {
      const int row = state_index(N, sign * i);
      m(row, 0) = Scalar(1);
      if (i < N) m(row, state_index(N, sign * (i + 1))) = Scalar(1);
    }
  }
  return m;
}

/// Dominant eigenvalue of a nonnegative matrix by power iteration from the
/// all-ones vector. Stops when the Collatz-Wielandt bounds
/// min (Mv)_i / v_i <= rho <= max (Mv)_i / v_i agree to `rel_tol`.
template <typename Derived>
typename Derived::Scalar spectral_radius(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-12,
                                         int max_iter = 100000) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("spectral_radius: matrix must be square");
  if ((m.array() < Scalar(0)).any()) throw DomainError("spectral_radius: matrix must be nonnegative");

  Vector v = Vector::Ones(m.rows());
  for (int it = 0; it < max_iter; ++it) {
    const Vector w = m * v;
    const Scalar top = w.maxCoeff();
    if (!(top > Scalar(0))) throw NoConvergence("spectral_radius: iterate vanished");
    Scalar lower = top, upper = Scalar(0);
    bool any = false;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!(v(i) > Scalar(0))) continue;
      const Scalar ratio = w(i) / v(i);
      if (!any || ratio < lower) lower = ratio;
      if (!any || ratio > upper) upper = ratio;
      any = true;
    }
    if (upper - lower <= Scalar(rel_tol) * upper) return (lower + upper) / Scalar(2);
    v = w / top;
  }
  throw NoConvergence("spectral_radius: no convergence within the iteration limit");
}

namespace detail {

// Root of a function that is negative at lo and positive at hi: Newton steps
// from `start` kept inside a shrinking bracket, bisection when a step leaves
// it, carried to the resolution of Scalar.
template <typename Scalar, typename F, typename DF>
Scalar bracketed_root(const F& f, const DF& df, Scalar lo, Scalar hi, Scalar start) {
  using std::abs;
  if (!(f(lo) < Scalar(0)) || !(f(hi) > Scalar(0))) throw DomainError("root bracket does not change sign");
  const Scalar tiny = std::numeric_limits<Scalar>::epsilon();
  Scalar x = start;
  for (int it = 0; it < 2000; ++it) {
    const Scalar fx = f(x);
    if (fx == Scalar(0)) return x;
    if (fx < Scalar(0)) lo = x;
    else hi = x;
    const Scalar slope = df(x);
    if (slope > Scalar(0)) {
      const Scalar step = fx / slope;
      if (abs(step) <= tiny * abs(x)) return x;
      const Scalar next = x - step;
      if (next > lo && next < hi) {
        x = next;
        continue;
      }
    }
    const Scalar mid = (lo + hi) / Scalar(2);
    if (!(mid > lo && mid < hi)) return x;  // bracket exhausted
    x = mid;
  }
  return x;
}

template <typename Scalar>
Scalar inverse_power(const Scalar& x, int n) {
  Scalar result(1), base = Scalar(1) / x;
  for (; n > 0; n >>= 1) {
    if (n & 1) result *= base;
    base *= base;
  }
  return result;
}

}  // namespace detail

/// Largest zero of x^-1 + 2(x^-2 + ... + x^-(N+1)) - 1, the first-return
/// function of state 0, bracketed on [1.5, 2.5].
template <typename Scalar = double>
Scalar rome_largest_zero(int N) {
  if (N < 1) throw DomainError("rome_largest_zero: N must be at least 1");
  // 1 - x^-1 - 2 sum x^-p increases on the bracket.
  auto h = [N](const Scalar& x) {
    const Scalar inv = Scalar(1) / x;
    Scalar term = inv, sum = inv;
    for (int p = 2; p <= N + 1; ++p) {
      term *= inv;
      sum += Scalar(2) * term;
    }
    return Scalar(1) - sum;
  };
  auto dh = [N](const Scalar& x) {
    const Scalar inv = Scalar(1) / x;
    Scalar term = inv * inv, sum = term;
    for (int p = 2; p <= N + 1; ++p) {
      term *= inv;
      sum += Scalar(2 * p) * term;
    }
    return sum;
  };
  // h is concave: Newton from the left end never overshoots.
  return detail::bracketed_root<Scalar>(h, dh, Scalar(1.5), Scalar(2.5), Scalar(1.5));
}

/// Largest root of x^2 - 2x - 1 + 2x^-N, bracketed on [1.5, 1 + sqrt 2].
template <typename Scalar = double>
Scalar largest_root_eq0(int N) {
  if (N < 1) throw DomainError("largest_root_eq0: N must be at least 1");
  using std::sqrt;
  auto g = [N](const Scalar& x) { return x * x - Scalar(2) * x - Scalar(1) + Scalar(2) * detail::inverse_power(x, N); };
  auto dg = [N](const Scalar& x) {
    return Scalar(2) * x - Scalar(2) - Scalar(2 * N) * detail::inverse_power(x, N + 1);
  };
  // g is convex: Newton from the right end never overshoots.
  const Scalar hi = Scalar(1) + sqrt(Scalar(2));
  return detail::bracketed_root<Scalar>(g, dg, Scalar(1.5), hi, hi);
}

enum class BoundMethod { eq0_root, rome, spectral, word_count };

std::string to_string(BoundMethod m);

/// Lower bound on the topological entropy of the billiard map, in nats.
struct EntropyCertificate {
  double bound = 0.0;
  double root = 0.0;  // growth rate whose logarithm gives the bound (0 if none)
  BoundMethod method = BoundMethod::eq0_root;
  double ell = 0.0;
  double eps = 0.0;
  int N = 0;
  TableClass table_class = TableClass::full;
  std::vector<std::string> chain;  // inequalities applied, in order
  bool rigorous_geometry = false;  // the eps-free premise is checked by sampling only
  bool certified = false;
};

/// log of the growth rate of the subshift with symbols -N..N, by the chosen method.
/// word_count uses (1/n) log a_n with n = 40.
double subshift_entropy(int N, BoundMethod method);

/// Certificate at the largest N allowed by l*tan(eps) (2l*tan(eps) for semistadia).
EntropyCertificate entropy_lower_bound(double ell, double eps, TableClass table_class);

/// Certificate at a given N; not certified when N + 1 exceeds the reach.
EntropyCertificate entropy_lower_bound_at(int N, double ell, double eps, TableClass table_class);

/// Classical stadium: rectangle length / width above sqrt 3 gives h >= log 2.
EntropyCertificate stadium_certificate(double length, double width);
/// Same for a table; throws ShapeUnsupported unless its caps are the semicircle arcs.
EntropyCertificate stadium_certificate(const Table& table);

/// Mushroom with stalk length l' (height 1) and cap radius t >= 1/4:
/// l' > sqrt(16t^2 - 1) / 2 gives h >= (1/2) log 2.
EntropyCertificate mushroom_certificate(double stalk, double radius);

/// log(1 + sqrt 2), halved for semistadia.
double limit_bound(TableClass table_class);

}  // namespace billiards
