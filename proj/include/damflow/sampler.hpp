#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "damflow/core.hpp"
#include "damflow/damsolver.hpp"
#include "damflow/wavecurves.hpp"

namespace damflow {

/// Point value of (h, u, b). `interface` marks x == 0, where the right
/// limit is reported.
struct FieldValue {
  double h = 0.0;
  double u = 0.0;
  double b = 0.0;
  bool interface = false;
};

/// Similarity speeds separating the regions: c1 <= 0 <= lambda1(h1, u1) <= u_m.
struct Breakpoints {
  double c1 = 0.0;
  double fan_foot = 0.0;
  double fan_head = 0.0;
};

inline Breakpoints breakpoints(const DamSolution& sol) {
  const Gravity g = sol.problem.gravity();
  return {sol.c1, char_speeds(sol.conn.right, g).lambda1, sol.u_m};
}

namespace detail {
inline void require_time(double t) {
  if (!(t > 0.0)) throw domain_error("sampling requires t > 0");
}
}  // namespace detail

inline FieldValue sample(const DamSolution& sol, double x, double t) {
  detail::require_time(t);
  const BedStep& step = sol.problem.step;
  const Breakpoints bp = breakpoints(sol);
  if (x < 0.0) {
    const State s = x < bp.c1 * t ? sol.problem.left : sol.behind;
    return {s.h, s.u, step.b0(), false};
  }
  const State& right = sol.conn.right;
  if (x == 0.0) {
    return {right.h, right.u, step.b1(), true};
  }
  if (x < bp.fan_foot * t) {
    return {right.h, right.u, step.b1(), false};
  }
  if (x <= bp.fan_head * t && right.h > 0.0) {
    const Gravity g = sol.problem.gravity();
    const State s = fan_state(WaveFamily::one, std::max(x / t, bp.fan_foot), make_fan(WaveFamily::one, right, g), g);
    return {s.h, s.h > 0.0 ? s.u : 0.0, step.b1(), false};
  }
  return {0.0, 0.0, step.b1(), false};
}

/// Field when the fluid does not pass. The rest state keeps the reflected S1
/// into still water of depth h_under; otherwise the initial data are returned.
inline FieldValue sample(const NoFlow& nf, double x, double t) {
  detail::require_time(t);
  const BedStep& step = nf.problem.step;
  if (x > 0.0) return {0.0, 0.0, step.b1(), false};
  if (x == 0.0) return {0.0, 0.0, step.b1(), true};
  if (nf.reason == NoFlowReason::rest_state) {
    const ShockState s = u0_and_c1(nf.h_under, nf.problem.left.h, nf.problem.left.u, nf.problem.gravity());
    if (x >= s.c1 * t) return {nf.h_under, 0.0, step.b0(), false};
  }
  return {nf.problem.left.h, nf.problem.left.u, step.b0(), false};
}

inline FieldValue sample(const DamOutcome& outcome, double x, double t) {
  return std::visit([&](const auto& v) { return sample(v, x, t); }, outcome);
}

struct ProfileRow {
  double x = 0.0;
  double h = 0.0;
  double u = 0.0;
  double b = 0.0;
};

/// Shadow-wave approximation at strip width epsilon * t: inside
/// (-eps t/2, eps t/2] the depth is chi, velocity 0 and the bed ramps
/// linearly from b0 to b1; outside it matches `sample`.
inline std::vector<ProfileRow> shadow_profile(const DamSolution& sol, double epsilon, double t,
                                              std::span<const double> xs) {
  detail::require_time(t);
  if (!(epsilon > 0.0)) throw domain_error("shadow profile requires epsilon > 0");
  const BedStep& step = sol.problem.step;
  const double half = epsilon * t / 2.0;
  std::vector<ProfileRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    if (x > -half && x <= half) {
      const double b = step.b0() + step.jump() * (x + half) / (epsilon * t);
      rows.push_back({x, sol.conn.chi, 0.0, b});
    } else {
      const FieldValue v = sample(sol, x, t);
      rows.push_back({x, v.h, v.u, v.b});
    }
  }
  return rows;
}

}  // namespace damflow
