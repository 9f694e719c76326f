#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "damflow/core.hpp"
#include "damflow/wavecurves.hpp"

namespace damflow {

enum class LeftWaveKind { s1_only, s1_then_r2, none };

inline const char* to_string(LeftWaveKind k) {
  switch (k) {
    case LeftWaveKind::s1_only: return "S1";
    case LeftWaveKind::s1_then_r2: return "S1+R2";
    case LeftWaveKind::none: return "none";
  }
  return "none";
}

/// Admissible negative-speed waves from (h_l, u_l) to (h0, u0).
struct LeftWavePattern {
  LeftWaveKind kind = LeftWaveKind::none;
  std::optional<State> intermediate;  // S1+R2 only
  double s1_speed = 0.0;
};

namespace detail {
// (SR)/(SR2) boundaries are resolved toward S1Only inside this window.
inline constexpr double kLeftBoundaryTol = 1e-10;
}  // namespace detail

/// Lower bound for h0 from non-positivity of the S1 speed:
/// (h_l/2)(sqrt(1 + 8z) - 1) if z = u_l^2/(g h_l) > 1, else h_l.
inline double tilde_h(double h_l, double u_l, Gravity g) {
  if (!(h_l > 0.0)) throw domain_error("tilde_h requires h_l > 0");
  const double z = u_l * u_l / (g.value() * h_l);
  return z > 1.0 ? h_l / 2.0 * (std::sqrt(1.0 + 8.0 * z) - 1.0) : h_l;
}

/// u0 reached from (h_l, u_l) by a single S1 shock.
inline double s1_only_u0(double h0, double h_l, double u_l, Gravity g) {
  if (!(h_l > 0.0) || !(h0 >= h_l * (1.0 - detail::kCurveBoundaryTol))) {
    throw domain_error("s1_only_u0 requires h0 >= h_l > 0");
  }
  return hugoniot_u(WaveFamily::one, std::max(h0, h_l), {h_l, u_l}, g);
}

/// Checks whether a given (h0, u0) is reachable from (h_l, u_l), u_l >= 0, by
/// waves of non-positive speed. Only S1 and S1+R2 can occur.
inline LeftWavePattern classify_left(double h_l, double u_l, double h0, double u0, Gravity g) {
  if (u_l < 0.0) {
    throw unsupported_case("left-wave classification assumes u_l >= 0");
  }
  if (!(h_l > 0.0) || !(h0 > 0.0)) {
    throw domain_error("classify_left requires positive depths");
  }
  const double tol = detail::kLeftBoundaryTol;
  const State left{h_l, u_l};
  const double h_min = std::max(h_l, tilde_h(h_l, u_l, g));
  if (h0 < h_min * (1.0 - tol)) {
    return {};
  }
  const double h_shock = std::max(h0, h_l);
  const double u_s = hugoniot_u(WaveFamily::one, h_shock, left, g);
  if (std::abs(u0 - u_s) <= tol * std::max(1.0, std::abs(u_s))) {
    return {LeftWaveKind::s1_only, std::nullopt, shock_speed(WaveFamily::one, h_shock, left, g)};
  }

  // S1 to (h*, u*), then R2 up to (h0, u0), all speeds negative.
  const double sqrt_gh0 = std::sqrt(g.value() * h0);
  if (!(h0 > h_l && u_s < u0 && u0 < -sqrt_gh0)) {
    return {};
  }
  // u_S1(h*) + 2 (sqrt(g h0) - sqrt(g h*)) - u0 is decreasing in h*, positive
  // at h_l and negative at h0.
  auto mismatch = [&](double hs) {
    return hugoniot_u(WaveFamily::one, hs, left, g) + 2.0 * (sqrt_gh0 - std::sqrt(g.value() * hs)) - u0;
  };
  double lo = h_l;
  double hi = h0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mismatch(mid) > 0.0 ? lo : hi) = mid;
  }
  const double h_star = 0.5 * (lo + hi);
  const State star{h_star, hugoniot_u(WaveFamily::one, h_star, left, g)};
  const double c1 = shock_speed(WaveFamily::one, h_star, left, g);
  const double lam2_star = char_speeds(star, g).lambda2;
  const double lam2_0 = char_speeds({h0, u0}, g).lambda2;
  if (c1 <= lam2_star + tol && lam2_star <= lam2_0 + tol && lam2_0 < 0.0 && c1 <= tol) {
    return {LeftWaveKind::s1_then_r2, star, c1};
  }
  return {};
}

}  // namespace damflow
