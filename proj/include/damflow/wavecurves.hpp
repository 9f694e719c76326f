#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "damflow/core.hpp"

namespace damflow {

/// Characteristic family: 1 travels with u - sqrt(gh), 2 with u + sqrt(gh).
enum class WaveFamily { one = 1, two = 2 };

struct CharSpeeds {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Parameters of a centred rarefaction fan issued from `left`. For family 1
/// the invariant is J = u + 2 sqrt(gh); for family 2, J = u - 2 sqrt(gh).
struct FanParams {
  State left;
  double invariant = 0.0;
};

namespace detail {

// Zero-strength waves (h == h_l) are accepted within this relative tolerance.
inline constexpr double kCurveBoundaryTol = 1e-12;

inline void require_shock_side(WaveFamily fam, double h, const State& left) {
  if (!(h > 0.0) || !(left.h > 0.0)) {
    throw domain_error("shock curve requires positive depths");
  }
  const double tol = kCurveBoundaryTol * left.h;
  const bool ok = fam == WaveFamily::one ? h >= left.h - tol : h <= left.h + tol;
  if (!ok) {
    throw domain_error(std::string("depth on the wrong side of h_l for an S") +
                       (fam == WaveFamily::one ? "1" : "2") + " shock");
  }
}

inline void require_rarefaction_side(WaveFamily fam, double h, const State& left) {
  if (!(h >= 0.0) || !(left.h > 0.0)) {
    throw domain_error("rarefaction curve requires h >= 0 and h_l > 0");
  }
  const double tol = kCurveBoundaryTol * left.h;
  const bool ok = fam == WaveFamily::one ? h <= left.h + tol : h >= left.h - tol;
  if (!ok) {
    throw domain_error(std::string("depth on the wrong side of h_l for an R") +
                       (fam == WaveFamily::one ? "1" : "2") + " rarefaction");
  }
}

}  // namespace detail

inline CharSpeeds char_speeds(const State& s, Gravity g) {
  detail::require_depth(s);
  const double c = std::sqrt(g.value() * s.h);
  return {s.u - c, s.u + c};
}

/// Velocity on the Hugoniot locus through `left`, k = sqrt(g/2 (1/h + 1/h_l)):
///   S1 (h >= h_l): u = u_l - k (h - h_l)
///   S2 (h <= h_l): u = u_l - k (h_l - h)
inline double hugoniot_u(WaveFamily fam, double h, const State& left, Gravity g) {
  detail::require_shock_side(fam, h, left);
  const double k = std::sqrt(g.value() / 2.0 * (1.0 / h + 1.0 / left.h));
  return fam == WaveFamily::one ? left.u - k * (h - left.h) : left.u - k * (left.h - h);
}

/// Rankine-Hugoniot speed u_l -/+ sqrt(g (h + h_l) h / (2 h_l)).
inline double shock_speed(WaveFamily fam, double h, const State& left, Gravity g) {
  detail::require_shock_side(fam, h, left);
  const double root = std::sqrt(g.value() * (h + left.h) * h / (2.0 * left.h));
  return fam == WaveFamily::one ? left.u - root : left.u + root;
}

/// Velocity on the rarefaction curve, u = u_l +/- 2 (sqrt(g h_l) - sqrt(g h)).
inline double rarefaction_u(WaveFamily fam, double h, const State& left, Gravity g) {
  detail::require_rarefaction_side(fam, h, left);
  const double delta = 2.0 * (std::sqrt(g.value() * left.h) - std::sqrt(g.value() * h));
  return fam == WaveFamily::one ? left.u + delta : left.u - delta;
}

inline FanParams make_fan(WaveFamily fam, const State& left, Gravity g) {
  if (!(left.h > 0.0)) {
    throw domain_error("rarefaction fan needs a non-vacuum foot state");
  }
  const double c2 = 2.0 * std::sqrt(g.value() * left.h);
  return {left, fam == WaveFamily::one ? left.u + c2 : left.u - c2};
}

/// State inside a centred fan at similarity coordinate xi = x/t.
///
/// Family 1 spans [lambda1(left), J] and ends in vacuum at xi = J, where the
/// returned state is (0, J). Family 2 spans xi >= lambda2(left).
inline State fan_state(WaveFamily fam, double xi, const FanParams& fp, Gravity g) {
  const CharSpeeds foot = char_speeds(fp.left, g);
  const double tol = 1e-12 * std::max({1.0, std::abs(xi), std::abs(fp.invariant)});
  double c = 0.0;  // sqrt(g h)
  if (fam == WaveFamily::one) {
    if (xi < foot.lambda1 - tol || xi > fp.invariant + tol) {
      throw domain_error("xi outside the family-1 fan");
    }
    c = std::max(0.0, (fp.invariant - xi) / 3.0);
  } else {
    if (xi < foot.lambda2 - tol) {
      throw domain_error("xi outside the family-2 fan");
    }
    c = std::max(0.0, (xi - fp.invariant) / 3.0);
  }
  return {c * c / g.value(), (fp.invariant + 2.0 * xi) / 3.0};
}

}  // namespace damflow
