#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "damflow/damsolver.hpp"
#include "oracles.hpp"

using namespace damflow;

namespace {

const Gravity g{9.81};

DamProblem make(double hl, double ul, double b0, double b1, double gv = 9.81) {
  return DamProblem({hl, ul}, BedStep(b0, b1, Gravity(gv)));
}

struct GridMin {
  double h0;
  double e;
  double cell;
};

GridMin grid_cube(const DamProblem& p, double lo, double hi, int n) {
  GridMin best{lo, std::numeric_limits<double>::infinity(), (hi - lo) / (n - 1)};
  for (int i = 0; i < n; ++i) {
    const double h = lo + (hi - lo) * i / (n - 1);
    const double e = oracle::energy_cube(h, p.left.h, p.left.u, p.step.b0(), p.step.b1(), p.step.g());
    if (e < best.e) best = {h, e, best.cell};
  }
  return best;
}

}  // namespace

TEST(DamSolver, ProblemValidation) {
  EXPECT_THROW(make(0.0, 1.0, 0.0, 0.2), domain_error);
  EXPECT_THROW(make(1.0, 0.0, 0.0, 0.2), domain_error);
  EXPECT_THROW(make(1.0, -1.0, 0.0, 0.2), domain_error);
  EXPECT_THROW(make(1.0, 1.0, 0.2, 0.2), domain_error);
}

TEST(DamSolver, ShockState) {
  const ShockState trivial = u0_and_c1(1.0, 1.0, 1.0, g);
  EXPECT_EQ(trivial.u0, 1.0);
  EXPECT_NEAR(trivial.c1, 1.0 - std::sqrt(9.81), 1e-15);
  const ShockState s = u0_and_c1(1.17, 1.0, 1.0, g);
  EXPECT_NEAR(s.u0, 0.4872503609872628, 1e-14);
  EXPECT_NEAR(s.c1, -2.5289239861464854, 1e-14);
  const ShockState stop = u0_and_c1(1.3417812146548306, 1.0, 1.0, g);
  EXPECT_NEAR(stop.u0, 0.0, 1e-14);
  EXPECT_NEAR(stop.c1, -2.9258483413429066, 1e-14);
  EXPECT_THROW(u0_and_c1(0.9, 1.0, 1.0, g), domain_error);
}

TEST(DamSolver, UnderlineH) {
  EXPECT_NEAR(underline_h(1.0, 1.0, g), 1.3417812146548306, 1e-13);
  const Cubic f = nonnegative_velocity_cubic(1.0, 1.0, g);
  EXPECT_GT(f(0.0), 0.0);
  EXPECT_LT(f(1.0), 0.0);
  EXPECT_NEAR(underline_h(1.0, 1e-8, g), 1.0, 1e-7);
  EXPECT_THROW(underline_h(1.0, 0.0, g), domain_error);
  oracle::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const double hl = rng.log_uniform(0.01, 100.0);
    const double ul = rng.log_uniform(0.01, 50.0);
    const double h = underline_h(hl, ul, g);
    EXPECT_NEAR(h, oracle::stop_depth(hl, ul), 1e-10 * h);
    EXPECT_NEAR(u0_and_c1(h, hl, ul, g).u0, 0.0, 1e-10 * std::max(1.0, ul));
  }
}

TEST(DamSolver, EntropyGapAndHatH) {
  const DamProblem p02 = make(1.0, 1.0, 0.0, 0.2);
  EXPECT_NEAR(entropy_gap(1.0, p02), -0.3328636487320263, 1e-14);
  EXPECT_FALSE(feasible_interval(p02).h_hat.has_value());

  const DamProblem p06 = make(1.0, 1.0, 0.0, 0.6);
  EXPECT_NEAR(entropy_gap(1.0, p06), 0.067136351267973704, 1e-14);
  const FeasibleInterval iv = feasible_interval(p06);
  ASSERT_TRUE(iv.h_hat.has_value());
  EXPECT_NEAR(*iv.h_hat, 1.0394151522241616, 1e-12);

  const double hu = 1.3417812146548306;
  const DamProblem pr = make(1.0, 1.0, 0.0, hu);
  const auto h = hat_h(pr, 1.0, underline_h(1.0, 1.0, g));
  ASSERT_TRUE(h.has_value());
  EXPECT_NEAR(*h, hu, 1e-12);
}

TEST(DamSolver, EnergyValues) {
  const DamProblem p = make(1.0, 1.0, 0.0, 0.2);
  EXPECT_NEAR(energy_E(1.3417812146548306, Branch::cube_root, p), 10.023512687210491, 1e-11);
  EXPECT_NEAR(energy_E(1.0, Branch::cube_root, p), 8.8359114089082331, 1e-12);
  EXPECT_NEAR(energy_E(1.17, Branch::cube_root, p), 7.4754728787268549, 1e-12);
  EXPECT_THROW(energy_E(0.95, Branch::cube_root, p), domain_error);
  EXPECT_THROW(energy_E(1.5, Branch::cube_root, p), domain_error);
  const DamProblem deep = make(1.0, 10.0, 0.0, 3.0);
  EXPECT_THROW(energy_E(2.5, Branch::entropy_saturated, deep), domain_error);
}

TEST(DamSolver, ReferenceCase) {
  const DamOutcome out = solve_dam(make(1.0, 1.0, 0.0, 0.2));
  ASSERT_TRUE(std::holds_alternative<DamSolution>(out));
  const DamSolution& s = std::get<DamSolution>(out);
  EXPECT_EQ(s.branch, Branch::cube_root);
  EXPECT_FALSE(s.m2.has_value());
  EXPECT_FALSE(s.tie);
  EXPECT_NEAR(s.behind.h, 1.1722399994909446, 2e-6);
  EXPECT_NEAR(s.energy, 7.4751606173033785, 1e-12);
  EXPECT_NEAR(s.behind.u, 0.48072291709257003, 2e-6);
  EXPECT_NEAR(s.c1, -2.5341231374949448, 2e-6);
  EXPECT_NEAR(s.conn.right.h, 0.31870184138211822, 2e-6);
  EXPECT_NEAR(s.conn.right.u, 1.7681812870739753, 2e-6);
  EXPECT_NEAR(s.conn.chi, 2.8116575625220722, 2e-5);
  EXPECT_NEAR(s.u_m, 5.3045438612219258, 2e-6);
  EXPECT_NEAR(s.u_m_alt, s.conn.right.u + std::sqrt(9.81 * s.conn.right.h), 1e-14);
  EXPECT_NEAR(froude(s.conn.right, g), 1.0, 1e-10);
  EXPECT_EQ(s.left_waves.kind, LeftWaveKind::s1_only);
  EXPECT_NEAR(s.interval.h_under, 1.3417812146548306, 1e-13);
  EXPECT_EQ(s.interval.h_tilde, 1.0);
}

TEST(DamSolver, NoFlowWhenJumpExceedsStopDepth) {
  const DamOutcome out = solve_dam(make(1.0, 1.0, 0.0, 1.5));
  ASSERT_TRUE(std::holds_alternative<NoFlow>(out));
  const NoFlow& nf = std::get<NoFlow>(out);
  EXPECT_EQ(nf.reason, NoFlowReason::jump_exceeds_hbar);
  EXPECT_NEAR(nf.h_under, 1.3417812146548306, 1e-13);
  EXPECT_STREQ(to_string(nf.reason), "jump_exceeds_hbar");
}

TEST(DamSolver, RestStateAtExactJump) {
  const double hu = underline_h(1.0, 1.0, g);
  const DamOutcome out = solve_dam(make(1.0, 1.0, 0.0, hu));
  ASSERT_TRUE(std::holds_alternative<NoFlow>(out));
  EXPECT_EQ(std::get<NoFlow>(out).reason, NoFlowReason::rest_state);
  EXPECT_TRUE(std::holds_alternative<NoFlow>(solve_dam(make(1.0, 1.0, 0.0, hu + 5e-11))));
  EXPECT_TRUE(std::holds_alternative<DamSolution>(solve_dam(make(1.0, 1.0, 0.0, hu - 1e-6))));
}

TEST(DamSolver, HighJumpHasBothCandidates) {
  const DamProblem p = make(1.0, 1.0, 0.0, 0.6);
  const DamSolution s = std::get<DamSolution>(solve_dam(p));
  ASSERT_TRUE(s.m2.has_value());
  EXPECT_GE(*s.m2, s.m1);
  EXPECT_EQ(s.branch, Branch::cube_root);
  EXPECT_GE(s.behind.h, *s.interval.h_hat - 1e-12);
  const GridMin gm = grid_cube(p, *s.interval.h_hat, s.interval.h_under, 4096);
  EXPECT_LE(std::abs(s.behind.h - gm.h0), gm.cell);
  EXPECT_LE(s.energy, gm.e + 1e-9);
}

TEST(DamSolver, MonotonicitySuite) {
  oracle::Rng rng(77);
  for (int c = 0; c < 200; ++c) {
    const double hl = rng.log_uniform(0.05, 20.0);
    const double ul = rng.log_uniform(0.05, 20.0);
    const double hu = underline_h(hl, ul, g);
    const double ht = tilde_h(hl, ul, g);
    const DamProblem p = make(hl, ul, 0.0, rng.uniform(0.01, 1.0) * hu);
    EXPECT_LT(nonnegative_velocity_cubic(hl, ul, g)(ht), 0.0);
    double r_prev = entropy_gap(ht, p);
    double m_prev = ht * u0_and_c1(ht, hl, ul, g).u0;
    double hh_prev = -1.0;
    const double e_l = eta({hl, ul}, 0.0, g);
    for (int i = 1; i < 512; ++i) {
      const double h = ht + (hu - ht) * i / 511.0;
      const ShockState s = u0_and_c1(h, hl, ul, g);
      const double r = entropy_gap(h, p);
      const double m = h * std::max(0.0, s.u0);
      const double hh = -s.c1 * (eta({h, std::max(0.0, s.u0)}, 0.0, g) - e_l);
      const double slack = 1e-10 * std::max(1.0, std::abs(hh));
      EXPECT_LE(r, r_prev + 1e-10);
      EXPECT_LE(m, m_prev + 1e-10);
      EXPECT_GE(hh, -slack);
      EXPECT_GE(hh, hh_prev - slack);
      r_prev = r;
      m_prev = m;
      hh_prev = hh;
    }
  }
}

TEST(DamSolver, OptimizerAgainstGridAndAdmissibility) {
  oracle::Rng rng(91);
  int flows = 0;
  for (int c = 0; c < 150; ++c) {
    const double hl = rng.log_uniform(0.05, 20.0);
    const double ul = rng.log_uniform(0.05, 20.0);
    const double hu = underline_h(hl, ul, g);
    const DamProblem p = make(hl, ul, 0.0, rng.uniform(0.01, 0.98) * hu);
    const DamOutcome out = solve_dam(p);
    ASSERT_TRUE(std::holds_alternative<DamSolution>(out));
    const DamSolution& s = std::get<DamSolution>(out);
    ++flows;
    const double lo = s.interval.h_hat.value_or(s.interval.h_tilde);
    const GridMin gm = grid_cube(p, std::max(lo, s.interval.h_tilde), hu, 4096);
    if (s.branch == Branch::cube_root) {
      EXPECT_LE(std::abs(s.energy - gm.e), 1e-6 * (1.0 + std::abs(gm.e)));
      EXPECT_LE(s.energy, gm.e + 1e-9 * (1.0 + std::abs(gm.e)));
    }
    EXPECT_LE(s.c1, 1e-12);
    EXPECT_GE(char_speeds(s.conn.right, g).lambda1, -1e-10);
    EXPECT_TRUE(entropy_ok(s.behind.h, s.conn.right.h, p.step));
    EXPECT_GE(s.conn.chi, 0.0);
    EXPECT_LE(s.conn.chi, chi_bar(s.behind.h, s.behind.u, p.step).chi_bar * (1 + 1e-12) + 1e-14);
    if (s.conn.right.h > 0.0) {
      EXPECT_GE(froude(s.conn.right, g), 1.0 - 1e-9);
    }
  }
  EXPECT_EQ(flows, 150);
}

TEST(DamSolver, SaturatedBranchDominatesAtSeam) {
  oracle::Rng rng(17);
  int seen = 0;
  for (int c = 0; c < 2000 && seen < 200; ++c) {
    const double hl = rng.log_uniform(0.05, 20.0);
    const double ul = rng.log_uniform(0.05, 20.0);
    const double hu = underline_h(hl, ul, g);
    const DamProblem p = make(hl, ul, 0.0, rng.uniform(0.05, 0.99) * hu);
    const FeasibleInterval iv = feasible_interval(p);
    if (!iv.h_hat || *iv.h_hat >= hu) continue;
    const double h = *iv.h_hat;
    const double u0 = u0_and_c1(h, hl, ul, g).u0;
    if (!(h - p.step.jump() > 0.0) || !saturated_branch_exists(h, u0, p.step)) continue;
    ++seen;
    const double e_sat = energy_E(h, Branch::entropy_saturated, p);
    const double e_cube = energy_E(h, Branch::cube_root, p);
    EXPECT_GE(e_sat, e_cube - 1e-9 * (1.0 + std::abs(e_cube)));
  }
  EXPECT_GT(seen, 20);
}

TEST(DamSolver, JumpAboveStopDepthNeverFlows) {
  oracle::Rng rng(3);
  for (int c = 0; c < 1000; ++c) {
    const double hl = rng.log_uniform(0.05, 20.0);
    const double ul = rng.log_uniform(0.05, 20.0);
    const double hu = oracle::stop_depth(hl, ul);
    const double b0 = rng.uniform(-5.0, 5.0);
    const double jump = hu * rng.uniform(1.001, 3.0);
    const DamOutcome out = solve_dam(make(hl, ul, b0, b0 + jump));
    ASSERT_TRUE(std::holds_alternative<NoFlow>(out));
    EXPECT_EQ(std::get<NoFlow>(out).reason, NoFlowReason::jump_exceeds_hbar);
  }
}
