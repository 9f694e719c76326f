#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "damflow/core.hpp"

namespace damflow {

/// c3 x^3 + c2 x^2 + c1 x + c0 with c3 != 0.
template <std::floating_point Real>
struct BasicCubic {
  Real c3 = 1;
  Real c2 = 0;
  Real c1 = 0;
  Real c0 = 0;

  [[nodiscard]] constexpr Real operator()(Real x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
  [[nodiscard]] constexpr Real derivative(Real x) const { return (3 * c3 * x + 2 * c2) * x + c1; }
  [[nodiscard]] constexpr Real second_derivative(Real x) const { return 6 * c3 * x + 2 * c2; }

  /// Sum of |c_i x^i|: the magnitude against which a residual p(x) is judged.
  [[nodiscard]] Real term_scale(Real x) const {
    const Real ax = std::abs(x);
    return std::abs(c3) * ax * ax * ax + std::abs(c2) * ax * ax + std::abs(c1) * ax + std::abs(c0);
  }
};

using Cubic = BasicCubic<double>;

/// Residual bound accepted for a polished root.
template <std::floating_point Real>
[[nodiscard]] Real root_tolerance(const BasicCubic<Real>& c, Real x) {
  return Real(1e-12) * std::max(Real(1), c.term_scale(x));
}

namespace detail {

// Relative window (on the depressed-cubic scale) inside which two roots are
// reported as one double root.
inline constexpr double kDoubleRootWindow = 1e-9;
inline constexpr int kPolishSteps = 3;

template <std::floating_point Real>
Real newton_polish(const BasicCubic<Real>& c, Real x, Real max_step) {
  Real best = std::abs(c(x));
  for (int i = 0; i < kPolishSteps && best > 0; ++i) {
    const Real d = c.derivative(x);
    if (d == 0) break;
    const Real step = c(x) / d;
    if (!std::isfinite(step) || std::abs(step) > max_step) break;
    const Real candidate = x - step;
    const Real r = std::abs(c(candidate));
    if (r > best) break;
    x = candidate;
    best = r;
  }
  return x;
}

// A double root of p is a simple root of p'; polish there.
template <std::floating_point Real>
Real double_root_polish(const BasicCubic<Real>& c, Real x) {
  Real best = std::abs(c.derivative(x));
  for (int i = 0; i < kPolishSteps && best > 0; ++i) {
    const Real d2 = c.second_derivative(x);
    if (d2 == 0) break;
    const Real candidate = x - c.derivative(x) / d2;
    const Real r = std::abs(c.derivative(candidate));
    if (!std::isfinite(candidate) || r > best) break;
    x = candidate;
    best = r;
  }
  return x;
}

}  // namespace detail

/// All real roots in ascending order; double roots appear twice, a triple
/// root three times.
template <std::floating_point Real>
std::vector<Real> real_roots(const BasicCubic<Real>& c) {
  if (c.c3 == 0 || !std::isfinite(c.c3)) {
    throw domain_error("cubic requires a finite nonzero leading coefficient");
  }
  const Real a = c.c2 / c.c3;
  const Real b = c.c1 / c.c3;
  const Real d = c.c0 / c.c3;
  const Real shift = -a / 3;

  // Depressed form t^3 + p t + q with x = t + shift.
  const Real p = b - a * a / 3;
  const Real q = (2 * a * a * a - 9 * a * b) / 27 + d;

  const Real t_scale = std::max(std::sqrt(std::abs(p)), std::cbrt(std::abs(q)));
  const Real window = Real(detail::kDoubleRootWindow) * t_scale;

  std::vector<Real> simple;
  std::vector<Real> doubled;

  if (t_scale == 0) {
    const Real x = shift;
    return {x, x, x};
  }

  const Real disc = (q / 2) * (q / 2) + (p / 3) * (p / 3) * (p / 3);
  if (disc < 0) {
    const Real m = 2 * std::sqrt(-p / 3);
    const Real arg = std::clamp(3 * q / (2 * p) * std::sqrt(-3 / p), Real(-1), Real(1));
    const Real theta = std::acos(arg) / 3;
    std::vector<Real> t = {m * std::cos(theta), m * std::cos(theta - 2 * std::numbers::pi_v<Real> / 3),
                           m * std::cos(theta - 4 * std::numbers::pi_v<Real> / 3)};
    std::sort(t.begin(), t.end());
    if (t[1] - t[0] <= window && t[2] - t[1] <= window) {
      const Real x = (t[0] + t[1] + t[2]) / 3 + shift;
      return {x, x, x};
    }
    if (t[1] - t[0] <= window) {
      doubled.push_back((t[0] + t[1]) / 2 + shift);
      simple.push_back(t[2] + shift);
    } else if (t[2] - t[1] <= window) {
      doubled.push_back((t[1] + t[2]) / 2 + shift);
      simple.push_back(t[0] + shift);
    } else {
      for (Real ti : t) simple.push_back(ti + shift);
    }
  } else {
    const Real sq = std::sqrt(disc);
    const Real big = std::cbrt(-(q / 2 + std::copysign(sq, q)));
    const Real small = big != 0 ? -p / (3 * big) : Real(0);
    const Real real_root = big + small;
    const Real imag = std::sqrt(Real(3)) / 2 * std::abs(big - small);
    simple.push_back(real_root + shift);
    if (imag <= window) {
      doubled.push_back(-real_root / 2 + shift);
    }
  }

  std::vector<Real> all(simple);
  all.insert(all.end(), doubled.begin(), doubled.end());
  auto max_step_for = [&all](Real x) {
    Real gap = std::numeric_limits<Real>::infinity();
    for (Real other : all) {
      if (other != x) gap = std::min(gap, std::abs(other - x));
    }
    return std::isfinite(gap) ? gap / 2 : std::max(Real(1), std::abs(x));
  };

  std::vector<Real> out;
  for (Real x : simple) out.push_back(detail::newton_polish(c, x, max_step_for(x)));
  for (Real x : doubled) {
    const Real polished = detail::double_root_polish(c, x);
    out.push_back(polished);
    out.push_back(polished);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest real root strictly greater than `lo`, if any.
template <std::floating_point Real>
std::optional<Real> largest_root_above(const BasicCubic<Real>& c, Real lo) {
  const auto roots = real_roots(c);
  if (roots.back() > lo) return roots.back();
  return std::nullopt;
}

}  // namespace damflow
