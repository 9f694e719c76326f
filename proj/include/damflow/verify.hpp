#pragma once

// Residual checks and brute-force referees. Everything here is recomputed
// from the defining relations; nothing calls into connection/damsolver
// formulas, so a bug there cannot hide itself.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "damflow/connection.hpp"
#include "damflow/core.hpp"
#include "damflow/damsolver.hpp"
#include "damflow/sampler.hpp"

namespace damflow::verify {

struct Tolerances {
  double mass_flux = 1e-12;
  double momentum = 1e-9;
  double rankine_hugoniot = 1e-9;
  double chi_bound = 1e-10;
  double entropy = 1e-12;
  double froude = 1e-9;
  double shock_speed = 1e-12;
  double fan_foot = 1e-10;
};

struct ResidualReport {
  double mass_flux = 0.0;        // |h1 u1 - h0 u0| / max(1, |h0 u0|)
  double momentum_source = 0.0;  // momentum jump + g [b] chi, relative
  double chi = 0.0;
  double chi_bar = 0.0;
  bool chi_in_bounds = true;
  bool entropy = true;
  double froude_right = 0.0;
  // Filled only for full dam solutions.
  std::optional<double> rh_mass;
  std::optional<double> rh_momentum;
  std::optional<double> shock_speed;
  std::optional<double> fan_foot_speed;

  struct Check {
    std::string name;
    bool ok;
  };

  [[nodiscard]] std::vector<Check> checks(const Tolerances& tol = {}) const {
    std::vector<Check> out = {
        {"mass_flux", std::isfinite(mass_flux) && mass_flux <= tol.mass_flux},
        {"momentum_source", std::isfinite(momentum_source) && momentum_source <= tol.momentum},
        {"chi_in_bounds", chi_in_bounds},
        {"entropy", entropy},
    };
    if (rh_mass) out.push_back({"rankine_hugoniot_mass", *rh_mass <= tol.rankine_hugoniot});
    if (rh_momentum) out.push_back({"rankine_hugoniot_momentum", *rh_momentum <= tol.rankine_hugoniot});
    if (shock_speed) out.push_back({"shock_speed", *shock_speed <= tol.shock_speed});
    if (fan_foot_speed) {
      out.push_back({"fan_foot_speed", *fan_foot_speed >= -tol.fan_foot});
      out.push_back({"froude_right", froude_right >= 1.0 - tol.froude});
    }
    return out;
  }

  [[nodiscard]] bool passed(const Tolerances& tol = {}) const {
    const auto c = checks(tol);
    return std::all_of(c.begin(), c.end(), [](const Check& k) { return k.ok; });
  }

  [[nodiscard]] std::optional<std::string> first_failure(const Tolerances& tol = {}) const {
    for (const auto& c : checks(tol)) {
      if (!c.ok) return c.name;
    }
    return std::nullopt;
  }
};

namespace raw {

inline double chi_upper(double h0, double u0, double jump, double g) {
  return (h0 * h0 + 2.0 / g * h0 * u0 * u0 -
          3.0 * std::pow(g, -2.0 / 3.0) * std::pow(u0, 4.0 / 3.0) * std::pow(h0, 4.0 / 3.0)) /
         (2.0 * jump);
}

inline double shock_u(double h, double h_l, double u_l, double g) {
  return u_l - std::sqrt(g / 2.0 * (1.0 / h + 1.0 / h_l)) * (h - h_l);
}

inline double shock_c(double h, double h_l, double u_l, double g) {
  return u_l - std::sqrt(g / 2.0 * (1.0 / h + 1.0 / h_l)) * h;
}

inline double energy_density(double h, double u, double b, double g) {
  return h * u * u / 2.0 + g * h * h / 2.0 + b * h;
}

// Largest root of h^3 - h_l h^2 - (h_l^2 + 2 u_l^2 h_l / g) h + h_l^3 by
// bisection on [h_l, upper]; f(h_l) < 0 and f -> +inf.
inline double stop_depth(double h_l, double u_l, double g) {
  auto f = [&](double h) { return h * h * h - h_l * h * h - (h_l * h_l + 2.0 / g * u_l * u_l * h_l) * h + h_l * h_l * h_l; };
  double lo = h_l;
  double hi = 2.0 * h_l;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double lower_depth(double h_l, double u_l, double g) {
  const double z = u_l * u_l / (g * h_l);
  return z > 1.0 ? h_l / 2.0 * (std::sqrt(1.0 + 8.0 * z) - 1.0) : h_l;
}

}  // namespace raw

inline ResidualReport check_connection(const Connection& c) {
  const double g = c.step.g();
  const double jump = c.step.jump();
  const double h0 = c.left.h, u0 = c.left.u, h1 = c.right.h, u1 = c.right.u;
  ResidualReport r;
  r.mass_flux = std::abs(h1 * u1 - h0 * u0) / std::max(1.0, std::abs(h0 * u0));
  const double m1 = h1 * u1 * u1 + g * h1 * h1 / 2.0;
  const double m0 = h0 * u0 * u0 + g * h0 * h0 / 2.0;
  const double source = g * jump * c.chi;
  r.momentum_source = std::abs(m1 - m0 + source) / std::max({1.0, m1, m0, std::abs(source)});
  r.chi = c.chi;
  r.chi_bar = raw::chi_upper(h0, u0, jump, g);
  const double chi_tol = 1e-10 * std::max(1.0, h0 * h0 / (2.0 * jump));
  r.chi_in_bounds = c.chi >= -chi_tol && c.chi <= r.chi_bar + chi_tol;
  r.entropy = h1 + c.step.b1() <= h0 + c.step.b0() + 1e-12;
  r.froude_right = h1 > 0.0 ? u1 / std::sqrt(g * h1) : 0.0;
  return r;
}

/// Connection residuals plus the left-shock Rankine-Hugoniot defects and the
/// sign checks on the outer wave speeds.
inline ResidualReport check_solution(const DamSolution& sol) {
  ResidualReport r = check_connection(sol.conn);
  const double g = sol.problem.step.g();
  const double hl = sol.problem.left.h, ul = sol.problem.left.u;
  const double h0 = sol.behind.h, u0 = sol.behind.u;
  const double c = sol.c1;
  const double dm = h0 * u0 - hl * ul;
  const double dmom = (h0 * u0 * u0 + g * h0 * h0 / 2.0) - (hl * ul * ul + g * hl * hl / 2.0);
  r.rh_mass = std::abs(c * (h0 - hl) - dm) / std::max({1.0, std::abs(dm), std::abs(c * (h0 - hl))});
  r.rh_momentum = std::abs(c * dm - dmom) / std::max({1.0, std::abs(dmom), std::abs(c * dm)});
  r.shock_speed = c;
  const double h1 = sol.conn.right.h, u1 = sol.conn.right.u;
  // A dry right side (u0 = 0 at h_under) has no fan and no Froude number.
  if (h1 > 0.0) r.fan_foot_speed = u1 - std::sqrt(g * h1);
  return r;
}

struct GridMinimum {
  bool empty = true;
  double h0 = 0.0;
  double energy = std::numeric_limits<double>::infinity();
  Branch branch = Branch::cube_root;
  double cell = 0.0;
};

/// Exhaustive minimum of the energy functional over an n-point uniform grid
/// of [h_tilde, h_under], both branches, all admissibility constraints.
inline GridMinimum grid_min_E(const DamProblem& p, int n) {
  if (n < 64) throw domain_error("grid_min_E needs at least 64 points");
  const double g = p.step.g();
  const double hl = p.left.h, ul = p.left.u;
  const double jump = p.step.jump(), b0 = p.step.b0(), b1 = p.step.b1();
  const double lo = raw::lower_depth(hl, ul, g);
  const double hi = raw::stop_depth(hl, ul, g);
  GridMinimum best;
  if (hi < jump - 1e-10) return best;
  best.cell = (hi - lo) / (n - 1);
  const double eta_l = raw::energy_density(hl, ul, b0, g);

  for (int i = 0; i < n; ++i) {
    const double h0 = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    const double u0 = std::max(0.0, raw::shock_u(h0, hl, ul, g));
    const double c = raw::shock_c(h0, hl, ul, g);
    const double left_part = -c * (raw::energy_density(h0, u0, b0, g) - eta_l);
    const double m = h0 * u0;
    auto total = [&](double h1) {
      const double u1 = h1 > 0.0 ? m / h1 : 0.0;
      return left_part + m * (u1 * u1 / 2.0 + g * (h1 + b1));
    };
    const double h1_crit = std::cbrt(m * m / g);
    const double h1_sat = h0 - jump;
    std::pair<double, Branch> cands[2] = {{std::numeric_limits<double>::infinity(), Branch::cube_root},
                                          {std::numeric_limits<double>::infinity(), Branch::entropy_saturated}};
    if (h1_crit <= h1_sat + 1e-12) {
      cands[0].first = total(h1_crit);
    } else if (u0 > 0.0 && h1_sat > 0.0) {
      const double y = u0 * u0 / (g * h0);
      if (y <= 1.0 && jump / h0 <= (3.0 - std::sqrt(1.0 + 8.0 * y)) / 2.0) cands[1].first = total(h1_sat);
    }
    for (const auto& [e, br] : cands) {
      if (e < best.energy) {
        best.empty = false;
        best.energy = e;
        best.h0 = h0;
        best.branch = br;
      }
    }
  }
  return best;
}

namespace detail {

// Composite midpoint rule with `cells` cells on every smooth piece of h(., t)
// inside [a, b].
inline double integrate_depth(const DamSolution& sol, double a, double b, double t, int cells) {
  const Breakpoints bp = breakpoints(sol);
  std::vector<double> cuts = {a};
  for (double s : {bp.c1 * t, 0.0, bp.fan_foot * t, bp.fan_head * t}) {
    if (s > a && s < b) cuts.push_back(s);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    if (!(hi > lo)) continue;
    const double dx = (hi - lo) / cells;
    double sum = 0.0;
    for (int i = 0; i < cells; ++i) sum += sample(sol, lo + (i + 0.5) * dx, t).h;
    total += sum * dx;
  }
  return total;
}

}  // namespace detail

/// |d/dt int_a^b h dx - (hu(a) - hu(b))| with a central difference in time
/// and a piecewise composite midpoint rule in space.
inline double mass_balance(const DamSolution& sol, double a, double b, double t, double dt, int cells = 256) {
  if (!(t > 0.0) || !(dt > 0.0) || !(dt < t)) throw domain_error("mass_balance requires 0 < dt < t");
  if (!(b > a)) throw domain_error("mass_balance requires a < b");
  if (cells < 1) throw domain_error("mass_balance requires at least one cell");
  const double rate =
      (detail::integrate_depth(sol, a, b, t + dt, cells) - detail::integrate_depth(sol, a, b, t - dt, cells)) /
      (2.0 * dt);
  auto flux = [&](double x) {
    const FieldValue v = sample(sol, x, t);
    return v.h * v.u;
  };
  return std::abs(rate - (flux(a) - flux(b)));
}

}  // namespace damflow::verify
