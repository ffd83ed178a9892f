#pragma once

// Low-level distortion kernels shared by the quantizer, the numeric solver
// (long double instantiation) and the oracle. A code point enters evaluation
// as its abscissa and squared height only: the integrand against a base point
// (x, 0) is rho(x) = (x - c.x)^2 + c.y^2.

#include <algorithm>
#include <cmath>
#include <vector>

namespace cq::detail {

template <class R>
struct EvalPoint {
  R x;   // abscissa of the code point
  R y2;  // squared height above the base line
  R r2;  // x*x + y2, cached for bisector cuts

  static EvalPoint from_xy(R px, R py) { return EvalPoint{px, py * py, px * px + py * py}; }
};

/// Antiderivative of rho(t) = (t - x)^2 + y2.
template <class R>
inline R rho_antiderivative(R t, R x, R y2) {
  const R d = t - x;
  return d * d * d / R(3) + y2 * t;
}

template <class R>
inline R rho_integral(R a, R b, R x, R y2) {
  return rho_antiderivative(b, x, y2) - rho_antiderivative(a, x, y2);
}

template <class R>
inline R rho_at(R t, const EvalPoint<R>& p) {
  const R d = t - p.x;
  return d * d + p.y2;
}

/// Abscissa where rho(., p) == rho(., q). Requires p.x != q.x.
template <class R>
inline R pair_cut(const EvalPoint<R>& p, const EvalPoint<R>& q) {
  return (q.r2 - p.r2) / (R(2) * (q.x - p.x));
}

/// True when the consecutive-pair cuts of an x-sorted point list are strictly
/// increasing and strictly inside (0, L): the list induces a valid partition.
template <class R>
bool cuts_valid(const EvalPoint<R>* pts, int n, R L) {
  R lo = R(0);
  for (int i = 0; i + 1 < n; ++i) {
    if (!(pts[i + 1].x > pts[i].x)) return false;
    const R c = pair_cut(pts[i], pts[i + 1]);
    if (!(c > lo && c < L)) return false;
    lo = c;
  }
  return true;
}

/// Distortion of an x-sorted point list with cells taken from consecutive
/// cuts clamped monotone into [0, L], weighted by the uniform density 1/L.
/// Exact whenever cuts_valid holds; an upper bound on the true min-integrand
/// value otherwise (collapsed cells get zero length).
template <class R>
R walk_distortion(const EvalPoint<R>* pts, int n, R L) {
  R lo = R(0);
  R acc = R(0);
  for (int i = 0; i + 1 < n; ++i) {
    R hi;
    if (pts[i + 1].x > pts[i].x) {
      hi = std::clamp(pair_cut(pts[i], pts[i + 1]), lo, L);
    } else {
      hi = lo;  // coincident or inverted abscissas: empty cell
    }
    acc += rho_integral(lo, hi, pts[i].x, pts[i].y2);
    lo = hi;
  }
  acc += rho_integral(lo, L, pts[n - 1].x, pts[n - 1].y2);
  return acc / L;
}

template <class R>
inline R min_rho(R t, const EvalPoint<R>* pts, int n) {
  R best = rho_at(t, pts[0]);
  for (int i = 1; i < n; ++i) best = std::min(best, rho_at(t, pts[i]));
  return best;
}

template <class R>
R simpson(R a, R b, R fa, R fm, R fb) {
  return (b - a) / R(6) * (fa + R(4) * fm + fb);
}

template <class R>
R adaptive_simpson_rec(const EvalPoint<R>* pts, int n, R a, R m, R b, R fa, R fm, R fb, R whole,
                       R tol, int depth) {
  const R lm = (a + m) / R(2);
  const R rm = (m + b) / R(2);
  const R flm = min_rho(lm, pts, n);
  const R frm = min_rho(rm, pts, n);
  const R left = simpson(a, m, fa, flm, fm);
  const R right = simpson(m, b, fm, frm, fb);
  const R err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= R(15) * tol) return left + right + err / R(15);
  return adaptive_simpson_rec(pts, n, a, lm, m, fa, flm, fm, left, tol / R(2), depth - 1) +
         adaptive_simpson_rec(pts, n, m, rm, b, fm, frm, fb, right, tol / R(2), depth - 1);
}

/// Integral of min_i rho(., pts[i]) over [0, L] weighted by 1/L, by adaptive
/// Simpson subdivision seeded at every pairwise bisector cut (the only places
/// the integrand can switch branches, so each seeded piece is a cubic and the
/// quadrature terminates at once). Defined for any point list, ordered or not.
template <class R>
R min_integrand_distortion(const EvalPoint<R>* pts, int n, R L, R abs_tol) {
  std::vector<R> knots;
  knots.reserve(static_cast<size_t>(n) * (n - 1) / 2 + 2);
  knots.push_back(R(0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (pts[i].x == pts[j].x) continue;
      const R c = pair_cut(pts[i], pts[j]);
      if (c > R(0) && c < L) knots.push_back(c);
    }
  knots.push_back(L);
  std::sort(knots.begin(), knots.end());

  R acc = R(0);
  const R piece_tol = abs_tol / R(knots.size());
  for (size_t k = 0; k + 1 < knots.size(); ++k) {
    const R a = knots[k];
    const R b = knots[k + 1];
    if (!(b > a)) continue;
    const R m = (a + b) / R(2);
    const R fa = min_rho(a, pts, n);
    const R fm = min_rho(m, pts, n);
    const R fb = min_rho(b, pts, n);
    acc += adaptive_simpson_rec(pts, n, a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb), piece_tol, 48);
  }
  return acc / L;
}

}  // namespace cq::detail
