#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <variant>

#include "damflow/connection.hpp"
#include "damflow/core.hpp"
#include "damflow/cubic.hpp"
#include "damflow/leftwaves.hpp"
#include "damflow/wavecurves.hpp"

namespace damflow {

/// Left state (h_l, u_l), both positive, vacuum to the right of a bed step.
struct DamProblem {
  State left;
  BedStep step;

  DamProblem(State left_state, BedStep bed) : left(left_state), step(bed) {
    if (!(left.h > 0.0) || !std::isfinite(left.h)) throw domain_error("dam problem requires h_l > 0");
    if (!(left.u > 0.0) || !std::isfinite(left.u)) throw domain_error("dam problem requires u_l > 0");
  }

  [[nodiscard]] Gravity gravity() const { return step.gravity(); }
};

/// h0 range permitted by the left shock: [h_tilde, h_under], plus the entropy
/// threshold h_hat of the cube-root branch when it falls inside.
struct FeasibleInterval {
  double h_tilde = 0.0;
  double h_under = 0.0;
  std::optional<double> h_hat;
};

struct ShockState {
  double u0 = 0.0;
  double c1 = 0.0;
};

struct DamSolution {
  DamProblem problem;
  State behind;  // (h0, u0) between the S1 shock and the step
  double c1 = 0.0;
  Connection conn;
  double u_m = 0.0;      // vacuum front, u1 + 2 sqrt(g h1)
  double u_m_alt = 0.0;  // diagnostic: u1 + sqrt(g h1)
  Branch branch = Branch::cube_root;
  double energy = 0.0;
  FeasibleInterval interval;
  bool tie = false;
  double m1 = 0.0;
  std::optional<double> m2;
  LeftWavePattern left_waves;
};

enum class NoFlowReason { jump_exceeds_hbar, rest_state };

inline const char* to_string(NoFlowReason r) {
  return r == NoFlowReason::jump_exceeds_hbar ? "jump_exceeds_hbar" : "rest_state";
}

struct NoFlow {
  DamProblem problem;
  NoFlowReason reason = NoFlowReason::jump_exceeds_hbar;
  double h_under = 0.0;
  double h_tilde = 0.0;
};

using DamOutcome = std::variant<DamSolution, NoFlow>;

namespace detail {

inline constexpr double kHbarJumpTol = 1e-10;
inline constexpr int kCoarseScan = 1024;
inline constexpr double kHatBisectionTol = 1e-13;

struct ScalarMin {
  double x = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

// Coarse uniform scan, then golden-section refinement on the bracket around
// the best sample. `fn` returns +inf where infeasible.
template <typename F>
ScalarMin minimize_scan_golden(F&& fn, double lo, double hi, int coarse = kCoarseScan) {
  ScalarMin best;
  if (!(hi > lo)) {
    best.x = lo;
    best.value = fn(lo);
    return best;
  }
  const double dx = (hi - lo) / coarse;
  int best_i = -1;
  for (int i = 0; i <= coarse; ++i) {
    const double x = i == coarse ? hi : lo + i * dx;
    const double v = fn(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  if (best_i < 0) return best;

  double a = std::max(lo, lo + (best_i - 1) * dx);
  double b = std::min(hi, lo + (best_i + 1) * dx);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  const double tol = 1e-14 * std::max(1.0, std::abs(hi));
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = fn(xm);
  if (fm < best.value) best = {xm, fm};
  return best;
}

}  // namespace detail

/// Left-shock data behind an S1 of depth h0:
/// u0 = u_l - sqrt(g/2 (1/h0 + 1/h_l)) (h0 - h_l), c1 = u_l - sqrt(...) h0.
inline ShockState u0_and_c1(double h0, double h_l, double u_l, Gravity g) {
  if (!(h_l > 0.0) || !(h0 >= h_l * (1.0 - detail::kCurveBoundaryTol))) {
    throw domain_error("u0_and_c1 requires h0 >= h_l > 0");
  }
  const double k = std::sqrt(g.value() / 2.0 * (1.0 / h0 + 1.0 / h_l));
  return {u_l - k * (h0 - h_l), u_l - k * h0};
}

/// f(h0) = h0^3 - h_l h0^2 - (h_l^2 + (2/g) u_l^2 h_l) h0 + h_l^3; u0(h0) >= 0
/// exactly where f <= 0 above h_l.
inline Cubic nonnegative_velocity_cubic(double h_l, double u_l, Gravity g) {
  return {1.0, -h_l, -(h_l * h_l + 2.0 / g.value() * u_l * u_l * h_l), h_l * h_l * h_l};
}

/// Largest root of f: the depth at which the fluid behind the shock stops.
inline double underline_h(double h_l, double u_l, Gravity g) {
  if (!(h_l > 0.0) || !(u_l > 0.0)) {
    throw domain_error("underline_h requires h_l > 0 and u_l > 0");
  }
  const auto roots = real_roots(nonnegative_velocity_cubic(h_l, u_l, g));
  return std::max(roots.back(), h_l);
}

/// r(h0) = cbrt(h0^2 u0^2 / g) - h0 + [b]; the cube-root branch is entropic
/// where r <= 0. Decreasing on [h_tilde, h_under].
inline double entropy_gap(double h0, const DamProblem& p) {
  const Gravity g = p.gravity();
  const double u0 = u0_and_c1(h0, p.left.h, p.left.u, g).u0;
  return critical_depth(h0, u0, g) - h0 + p.step.jump();
}

/// Root of r in (h_tilde, h_under] by bisection, absent when r(h_tilde) <= 0
/// or when r(h_under) > 0.
inline std::optional<double> hat_h(const DamProblem& p, double h_tilde, double h_under) {
  if (entropy_gap(h_tilde, p) <= 0.0) return std::nullopt;
  // At h_under u0 vanishes only up to rounding, so r(h_under) = [b] - h_under
  // carries a cube-root residue of order 1e-11.
  const double r_under = entropy_gap(h_under, p);
  if (r_under > detail::kHbarJumpTol) return std::nullopt;
  if (r_under >= 0.0) return h_under;
  double lo = h_tilde;
  double hi = h_under;
  while (hi - lo > detail::kHatBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (entropy_gap(mid, p) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline FeasibleInterval feasible_interval(const DamProblem& p) {
  const Gravity g = p.gravity();
  FeasibleInterval iv;
  iv.h_tilde = tilde_h(p.left.h, p.left.u, g);
  iv.h_under = underline_h(p.left.h, p.left.u, g);
  if (iv.h_under >= p.step.jump() - detail::kHbarJumpTol) {
    iv.h_hat = hat_h(p, iv.h_tilde, std::max(iv.h_under, iv.h_tilde));
  }
  return iv;
}

/// Right-hand depth prescribed by `branch` at h0.
inline double branch_h1(double h0, double u0, Branch branch, const BedStep& step) {
  return branch == Branch::cube_root ? critical_depth(h0, u0, step.gravity()) : h0 - step.jump();
}

/// Non-constant part of the total energy production as a function of h0:
/// -c1 (eta(h0, u0; b0) - eta(h_l, u_l; b0)) + h1 u1 (u1^2/2 + g (h1 + b1)).
inline double energy_E(double h0, Branch branch, const DamProblem& p) {
  const Gravity g = p.gravity();
  const double h_l = p.left.h;
  const double u_l = p.left.u;
  const double h_tilde = tilde_h(h_l, u_l, g);
  const double h_under = underline_h(h_l, u_l, g);
  const double slack = 1e-12 * std::max(1.0, h_under);
  if (h0 < h_tilde - slack || h0 > h_under + slack) {
    throw domain_error("energy_E: h0 outside [h_tilde, h_under]");
  }
  const ShockState s = u0_and_c1(h0, h_l, u_l, g);
  const double u0 = std::max(0.0, s.u0);
  const double h1 = branch_h1(h0, u0, branch, p.step);
  if (branch == Branch::entropy_saturated && !(h1 > 0.0)) {
    throw domain_error("energy_E: entropy-saturated branch needs h0 > [b]");
  }
  const double mass = h0 * u0;
  const double u1 = h1 > 0.0 ? mass / h1 : 0.0;
  const double b0 = p.step.b0();
  return -s.c1 * (eta({h0, u0}, b0, g) - eta(p.left, b0, g)) +
         mass * (u1 * u1 / 2.0 + g.value() * (h1 + p.step.b1()));
}

/// Dam-break solution selected by least energy production, or NoFlow when
/// the fluid cannot pass the step.
inline DamOutcome solve_dam(const DamProblem& p) {
  const Gravity g = p.gravity();
  const double jump = p.step.jump();
  const FeasibleInterval iv = feasible_interval(p);

  if (iv.h_under < jump - detail::kHbarJumpTol) {
    return NoFlow{p, NoFlowReason::jump_exceeds_hbar, iv.h_under, iv.h_tilde};
  }
  if (std::abs(iv.h_under - jump) <= detail::kHbarJumpTol) {
    return NoFlow{p, NoFlowReason::rest_state, iv.h_under, iv.h_tilde};
  }

  auto e_cube = [&](double h0) { return energy_E(h0, Branch::cube_root, p); };
  const double m1_lo = std::max(iv.h_tilde, iv.h_hat.value_or(iv.h_tilde));
  const detail::ScalarMin m1 = detail::minimize_scan_golden(e_cube, m1_lo, iv.h_under);

  std::optional<detail::ScalarMin> m2;
  if (iv.h_hat) {
    auto e_sat = [&](double h0) {
      const double u0 = u0_and_c1(h0, p.left.h, p.left.u, g).u0;
      if (!(u0 > 0.0) || !saturated_branch_exists(h0, u0, p.step)) {
        return std::numeric_limits<double>::infinity();
      }
      return energy_E(h0, Branch::entropy_saturated, p);
    };
    const detail::ScalarMin cand = detail::minimize_scan_golden(e_sat, iv.h_tilde, *iv.h_hat);
    if (std::isfinite(cand.value)) m2 = cand;
  }

  Branch branch = Branch::cube_root;
  double h0 = m1.x;
  double energy = m1.value;
  bool tie = false;
  if (m2) {
    const double gap = m2->value - m1.value;
    if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(m1.value))) {
      tie = true;
    } else if (gap < 0.0) {
      branch = Branch::entropy_saturated;
      h0 = m2->x;
      energy = m2->value;
    }
  }

  const ShockState s = u0_and_c1(h0, p.left.h, p.left.u, g);
  const double u0 = std::max(0.0, s.u0);
  const Connection conn = connection_on_branch(h0, u0, p.step, branch);
  const double c_right = std::sqrt(g.value() * conn.right.h);

  DamSolution sol{p,
                  {h0, u0},
                  s.c1,
                  conn,
                  conn.right.u + 2.0 * c_right,
                  conn.right.u + c_right,
                  branch,
                  energy,
                  iv,
                  tie,
                  m1.value,
                  m2 ? std::optional<double>(m2->value) : std::nullopt,
                  classify_left(p.left.h, p.left.u, h0, u0, g)};
  return sol;
}

}  // namespace damflow
