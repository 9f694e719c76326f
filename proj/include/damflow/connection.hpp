#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "damflow/core.hpp"
#include "damflow/cubic.hpp"

namespace damflow {

/// Which right-hand depth the stationary shadow wave selects.
///  - cube_root:          h1 = cbrt(h0^2 u0^2 / g), the energy-flux minimiser
///  - entropy_saturated:  h1 = h0 - [b], entropy inequality active
enum class Branch { cube_root, entropy_saturated };

inline const char* to_string(Branch b) {
  return b == Branch::cube_root ? "M1" : "M2";
}

struct ChiBound {
  double chi_bar = 0.0;
  double y = 0.0;  // u0^2 / (g h0)
};

/// Stationary shadow wave linking (h0, u0) at x = 0- to (h1, u1) at x = 0+.
/// The strip carries depth chi and zero velocity.
struct Connection {
  State left;
  State right;
  double chi = 0.0;
  Branch branch = Branch::cube_root;
  BedStep step;
};

namespace detail {

inline constexpr double kEntropyTol = 1e-12;

inline double froude_squared(double h0, double u0, Gravity g) {
  return u0 * u0 / (g.value() * h0);
}

inline void require_connection_input(double h0, const BedStep& step) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) {
    throw domain_error("connection requires h0 > 0");
  }
  if (!(step.jump() > 0.0)) {
    throw domain_error("connection requires a positive bed jump");
  }
}

}  // namespace detail

/// Strip depth that makes (h0, u0) -> (h1, h0 u0 / h1) satisfy the momentum
/// jump with the bed source. Can be negative; callers check the sign.
inline double chi_of_h1(double h0, double u0, double h1, const BedStep& step) {
  detail::require_connection_input(h0, step);
  if (!(h1 > 0.0)) {
    throw domain_error("chi_of_h1 requires h1 > 0");
  }
  const double y = detail::froude_squared(h0, u0, step.gravity());
  return ((1.0 + 2.0 * y) * h0 * h0 - h1 * h1 - 2.0 * y * h0 * h0 * h0 / h1) / (2.0 * step.jump());
}

/// Upper bound on chi for which the h1 cubic keeps a positive root:
/// chi_bar = h0^2 / (2 [b]) (1 + 2y - 3 y^(2/3)). Never negative; zero at y = 1.
inline ChiBound chi_bar(double h0, double u0, const BedStep& step) {
  detail::require_connection_input(h0, step);
  const double y = detail::froude_squared(h0, u0, step.gravity());
  const double shape = 1.0 + 2.0 * y - 3.0 * std::cbrt(y * y);
  return {std::max(0.0, h0 * h0 / (2.0 * step.jump()) * shape), y};
}

/// The cubic h1^3 - A h1 + B with A = h0^2 + (2/g) h0 u0^2 - 2 [b] chi and
/// B = 2 h0^2 u0^2 / g.
inline Cubic connection_cubic(double h0, double u0, const BedStep& step, double chi) {
  const double g = step.g();
  const double a = h0 * h0 + 2.0 / g * h0 * u0 * u0 - 2.0 * step.jump() * chi;
  const double b = 2.0 * h0 * h0 * u0 * u0 / g;
  return {1.0, 0.0, -a, b};
}

/// Positive roots of the h1 cubic, ascending.
inline std::vector<double> h1_candidates(double h0, double u0, const BedStep& step, double chi) {
  detail::require_connection_input(h0, step);
  if (!(chi >= 0.0)) {
    throw domain_error("strip depth chi must be non-negative");
  }
  const ChiBound bound = chi_bar(h0, u0, step);
  if (chi > bound.chi_bar * (1.0 + 1e-12) + 1e-14) {
    throw empty_feasible("chi exceeds chi_bar: the h1 cubic has no positive root");
  }
  std::vector<double> out;
  for (double r : real_roots(connection_cubic(h0, u0, step, chi))) {
    if (r > 0.0) out.push_back(r);
  }
  return out;
}

/// Entropy condition across the step: h1 + b1 <= h0 + b0.
inline bool entropy_ok(double h0, double h1, const BedStep& step) {
  return h1 <= h0 - step.jump() + detail::kEntropyTol;
}

/// Energy-flux-stationary right depth cbrt(h0^2 u0^2 / g).
inline double critical_depth(double h0, double u0, Gravity g) {
  return std::cbrt(h0 * h0 * u0 * u0 / g.value());
}

/// Whether the entropy-saturated choice h1 = h0 - [b] has chi >= 0:
/// y <= 1 and [b] <= h0 (3 - sqrt(1 + 8y)) / 2.
inline bool saturated_branch_exists(double h0, double u0, const BedStep& step) {
  const double y = detail::froude_squared(h0, u0, step.gravity());
  return y <= 1.0 && step.jump() <= h0 / 2.0 * (3.0 - std::sqrt(1.0 + 8.0 * y)) && h0 > step.jump();
}

/// Builds the connection on a prescribed branch without re-deciding it.
/// With u0 == 0 the cube-root branch degenerates to a dry right side
/// (h1 = u1 = 0) and chi = h0^2 / (2 [b]).
inline Connection connection_on_branch(double h0, double u0, const BedStep& step, Branch branch) {
  detail::require_connection_input(h0, step);
  if (!(u0 >= 0.0)) {
    throw domain_error("connection requires u0 >= 0");
  }
  const Gravity g = step.gravity();
  if (branch == Branch::cube_root) {
    const double h1 = critical_depth(h0, u0, g);
    const double u1 = h1 > 0.0 ? h0 * u0 / h1 : 0.0;
    return {{h0, u0}, {h1, u1}, chi_bar(h0, u0, step).chi_bar, Branch::cube_root, step};
  }
  if (!saturated_branch_exists(h0, u0, step)) {
    throw no_entropic_connection("entropic shadow wave at the step does not exist for these data");
  }
  const double h1 = h0 - step.jump();
  const double chi = std::clamp(chi_of_h1(h0, u0, h1, step), 0.0, chi_bar(h0, u0, step).chi_bar);
  return {{h0, u0}, {h1, h0 * u0 / h1}, chi, Branch::entropy_saturated, step};
}

/// The entropic connection of least energy production for given (h0, u0).
inline Connection optimal_connection(double h0, double u0, const BedStep& step) {
  detail::require_connection_input(h0, step);
  if (!(u0 >= 0.0)) {
    throw domain_error("optimal_connection requires u0 >= 0");
  }
  const double h1_bar = critical_depth(h0, u0, step.gravity());
  if (entropy_ok(h0, h1_bar, step)) {
    return connection_on_branch(h0, u0, step, Branch::cube_root);
  }
  return connection_on_branch(h0, u0, step, Branch::entropy_saturated);
}

/// Part of the local energy production that depends on h1 (u1 eliminated
/// through mass conservation).
inline double connection_energy_flux(double h0, double u0, double h1, const BedStep& step) {
  const double m = h0 * u0;
  return step.g() * m * (h1 + step.b1()) + m * m * m / (2.0 * h1 * h1);
}

/// D = Q(h1, u1; b1) - Q(h0, u0; b0).
inline double local_energy_production(const Connection& c) {
  return flux_q(c.right, c.step.b1(), c.step.gravity()) - flux_q(c.left, c.step.b0(), c.step.gravity());
}

}  // namespace damflow
