#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace fhlab {

// Gauss-Legendre rule on [-1,1], nodes computed by Newton iteration in the
// working precision so the extended tier is not limited by double nodes.
template <class R>
struct GaussRule {
  std::vector<R> x, w;
};

template <class R>
const GaussRule<R>& gauss_rule(int n) {
  static std::map<int, GaussRule<R>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  using std::abs;
  GaussRule<R> rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    R x = R(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    R dp = 1;
    for (int iter = 0; iter < 60; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x)
      R p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      R dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= abs(x) * std::numeric_limits<R>::epsilon() * 4) break;
    }
    R w = 2 / ((1 - x * x) * dp * dp);
    rule.x[i] = -x;  // ascending order
    rule.w[i] = w;
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0;
  return cache.emplace(n, std::move(rule)).first->second;
}

template <class R, class F>
R gauss_apply(const GaussRule<R>& rule, F&& f, const R& a, const R& b) {
  R mid = (a + b) / 2, half = (b - a) / 2, sum = 0;
  for (size_t i = 0; i < rule.x.size(); ++i)
    sum += rule.w[i] * f(mid + half * rule.x[i]);
  return sum * half;
}

namespace detail {

template <class R, class F>
R adapt(const GaussRule<R>& rule, F&& f, const R& a, const R& b, const R& whole,
        const R& tol_rel, const R& abs_floor, int depth) {
  using std::abs;
  R mid = (a + b) / 2;
  R left = gauss_apply(rule, f, a, mid);
  R right = gauss_apply(rule, f, mid, b);
  R refined = left + right;
  R err = abs(refined - whole);
  if (depth <= 0 || err <= tol_rel * abs(refined) + abs_floor) return refined;
  // the accepted panel error is typically far below |refined - whole|, so a
  // constant per-panel floor keeps the total error near the requested one
  return adapt(rule, f, a, mid, left, tol_rel, abs_floor, depth - 1) +
         adapt(rule, f, mid, b, right, tol_rel, abs_floor, depth - 1);
}

}  // namespace detail

// Adaptive bisection with a fixed-order Gauss panel. Smooth integrands
// terminate at the first comparison; kinks get localized subdivision. The
// effective tolerance has an absolute floor of tol_rel times the L1 norm of
// the integrand, so oscillatory cancellation cannot force runaway recursion.
template <class R, class F>
R integrate(F&& f, R a, R b, double tol_rel = 1e-12, double abs_floor = 0.0,
            int max_depth = 48, int order = 24) {
  using std::abs;
  const auto& rule = gauss_rule<R>(order);
  R whole = gauss_apply(rule, f, a, b);
  R mid = (a + b) / 2, half = (b - a) / 2, l1 = 0;
  for (size_t i = 0; i < rule.x.size(); ++i)
    l1 += rule.w[i] * abs(f(mid + half * rule.x[i]));
  l1 *= half;
  R floor = R(abs_floor);
  if (R(tol_rel) * l1 > floor) floor = R(tol_rel) * l1;
  return detail::adapt(rule, f, a, b, whole, R(tol_rel), floor, max_depth);
}

// Integrate over [a,b] with known algebraic singular points inside or at the
// ends. The interval is split at each point and the substitution x = p +- t^2
// is applied on the flanking pieces.
template <class R, class F>
R integrate_with_singularities(F&& f, R a, R b, std::vector<R> pts,
                               double tol_rel = 1e-12, double abs_floor = 0.0) {
  using std::sqrt;
  std::sort(pts.begin(), pts.end());
  std::vector<R> cuts{a};
  for (const R& p : pts)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  auto is_singular = [&](const R& v) {
    for (const R& p : pts)
      if (p == v) return true;
    return false;
  };

  R total = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    R u = cuts[i], v = cuts[i + 1];
    bool su = is_singular(u), sv = is_singular(v);
    if (su && sv) {
      R m = (u + v) / 2;
      R hu = sqrt(m - u), hv = sqrt(v - m);
      total += integrate([&](const R& t) { return f(u + t * t) * 2 * t; }, R(0), hu,
                         tol_rel, abs_floor);
      total += integrate([&](const R& t) { return f(v - t * t) * 2 * t; }, R(0), hv,
                         tol_rel, abs_floor);
    } else if (su) {
      R h = sqrt(v - u);
      total += integrate([&](const R& t) { return f(u + t * t) * 2 * t; }, R(0), h,
                         tol_rel, abs_floor);
    } else if (sv) {
      R h = sqrt(v - u);
      total += integrate([&](const R& t) { return f(v - t * t) * 2 * t; }, R(0), h,
                         tol_rel, abs_floor);
    } else {
      total += integrate(f, u, v, tol_rel, abs_floor);
    }
  }
  return total;
}

// Semi-infinite tail [a, inf) of a decaying integrand: geometric segments,
// stopping once segments stop contributing.
template <class R, class F>
R integrate_tail(F&& f, R a, R step, double tol_rel = 1e-12) {
  using std::abs;
  R total = 0;
  int quiet = 0;
  for (int k = 0; k < 80; ++k) {
    R b = a + step;
    R seg = integrate(f, a, b, tol_rel);
    total += seg;
    if (abs(seg) <= tol_rel * abs(total))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 2) break;
    a = b;
    step *= 2;
  }
  return total;
}

}  // namespace fhlab
