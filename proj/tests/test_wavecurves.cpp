#include <gtest/gtest.h>

#include <cmath>

#include "damflow/wavecurves.hpp"
#include "oracles.hpp"

using namespace damflow;

namespace {
const Gravity g{9.81};
const double kSqrtG = 3.1320919526731651;
}  // namespace

TEST(WaveCurves, CharacteristicSpeeds) {
  const auto vac = char_speeds({0.0, 3.0}, g);
  EXPECT_EQ(vac.lambda1, 3.0);
  EXPECT_EQ(vac.lambda2, 3.0);
  const auto rest = char_speeds({1.0, 0.0}, g);
  EXPECT_NEAR(rest.lambda1, -kSqrtG, 1e-15);
  EXPECT_NEAR(rest.lambda2, kSqrtG, 1e-15);
  const auto moving = char_speeds({1.0, 1.0}, g);
  EXPECT_NEAR(moving.lambda1, 1.0 - kSqrtG, 1e-15);
  EXPECT_NEAR(moving.lambda2, 1.0 + kSqrtG, 1e-15);
}

TEST(WaveCurves, HugoniotLocus) {
  EXPECT_EQ(hugoniot_u(WaveFamily::one, 1.0, {1.0, 0.7}, g), 0.7);
  EXPECT_NEAR(hugoniot_u(WaveFamily::one, 2.0, {1.0, 0.0}, g), -2.7124711980037687, 1e-14);
  EXPECT_NEAR(hugoniot_u(WaveFamily::one, 1.17, {1.0, 1.0}, g), 0.4872503609872628, 1e-14);
  EXPECT_THROW(hugoniot_u(WaveFamily::one, 0.9, {1.0, 1.0}, g), domain_error);
  EXPECT_THROW(hugoniot_u(WaveFamily::two, 1.1, {1.0, 1.0}, g), domain_error);
  EXPECT_THROW(hugoniot_u(WaveFamily::one, 0.0, {1.0, 1.0}, g), domain_error);
}

TEST(WaveCurves, ShockSpeeds) {
  const State left{1.0, 1.0};
  EXPECT_NEAR(shock_speed(WaveFamily::one, 1.0, left, g), char_speeds(left, g).lambda1, 1e-15);
  EXPECT_NEAR(shock_speed(WaveFamily::one, 1.342, left, g), -2.9263517952419903, 1e-14);
  EXPECT_NEAR(shock_speed(WaveFamily::two, 0.5, {1.0, 0.0}, g), 1.9180067778816633, 1e-14);
}

TEST(WaveCurves, RarefactionLocus) {
  EXPECT_EQ(rarefaction_u(WaveFamily::one, 1.0, {1.0, 0.3}, g), 0.3);
  EXPECT_NEAR(rarefaction_u(WaveFamily::one, 0.25, {1.0, 0.0}, g), kSqrtG, 1e-14);
  EXPECT_NEAR(rarefaction_u(WaveFamily::one, 0.0, {1.0, 0.5}, g), 0.5 + 2 * kSqrtG, 1e-14);
  EXPECT_NEAR(rarefaction_u(WaveFamily::two, 4.0, {1.0, 0.0}, g), 2 * kSqrtG, 1e-14);
  EXPECT_THROW(rarefaction_u(WaveFamily::one, 1.5, {1.0, 0.0}, g), domain_error);
  EXPECT_THROW(rarefaction_u(WaveFamily::two, 0.5, {1.0, 0.0}, g), domain_error);
}

TEST(WaveCurves, FanEndpoints) {
  const State left{1.0, 1.0};
  const auto fp = make_fan(WaveFamily::one, left, g);
  const State foot = fan_state(WaveFamily::one, char_speeds(left, g).lambda1, fp, g);
  EXPECT_NEAR(foot.h, left.h, 1e-14);
  EXPECT_NEAR(foot.u, left.u, 1e-14);
  const State head = fan_state(WaveFamily::one, fp.invariant, fp, g);
  EXPECT_EQ(head.h, 0.0);
  EXPECT_NEAR(head.u, fp.invariant, 1e-14);
  EXPECT_THROW(fan_state(WaveFamily::one, fp.invariant + 0.1, fp, g), domain_error);
  EXPECT_THROW(fan_state(WaveFamily::one, -10.0, fp, g), domain_error);
}

TEST(WaveCurves, FanInteriorHandAlgebra) {
  // J = 6 and xi = 0: sqrt(g h) = 2, u = 2.
  const double h_l = 1.0;
  const FanParams fp{{h_l, 6.0 - 2.0 * std::sqrt(9.81 * h_l)}, 6.0};
  const State s = fan_state(WaveFamily::one, 0.0, fp, g);
  EXPECT_NEAR(s.h, 0.40774719673802243, 1e-15);
  EXPECT_NEAR(s.u, 2.0, 1e-15);
}

// Rankine-Hugoniot identities on random shocks of both families.
TEST(WaveCurves, RankineHugoniotProperty) {
  oracle::Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Gravity gg{rng.uniform(1.0, 20.0)};
    const State left{rng.log_uniform(1e-2, 1e2), rng.uniform(-10.0, 10.0)};
    const WaveFamily fam = i % 2 == 0 ? WaveFamily::one : WaveFamily::two;
    const double h = fam == WaveFamily::one ? left.h * rng.uniform(1.0, 20.0) : left.h * rng.uniform(0.05, 1.0);
    const double u = hugoniot_u(fam, h, left, gg);
    const double c = shock_speed(fam, h, left, gg);
    const double dm = h * u - left.h * left.u;
    const double mass = c * (h - left.h) - dm;
    const double mom_r = h * u * u + gg.value() * h * h / 2;
    const double mom_l = left.h * left.u * left.u + gg.value() * left.h * left.h / 2;
    const double mom = c * dm - (mom_r - mom_l);
    EXPECT_LE(std::abs(mass), 1e-10 * std::max({1.0, std::abs(dm), std::abs(c * (h - left.h))}));
    EXPECT_LE(std::abs(mom), 1e-9 * std::max({1.0, std::abs(c * dm), mom_r, mom_l}));
    if (fam == WaveFamily::one && h > left.h * (1 + 1e-9)) {
      EXPECT_LT(c, char_speeds(left, gg).lambda1);
      EXPECT_GT(c, char_speeds({h, u}, gg).lambda1);
    }
  }
}

TEST(WaveCurves, FanInvariantsProperty) {
  oracle::Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const Gravity gg{rng.uniform(1.0, 20.0)};
    const State left{rng.log_uniform(1e-2, 1e2), rng.uniform(-10.0, 10.0)};
    const auto fp = make_fan(WaveFamily::one, left, gg);
    const double xi = rng.uniform(char_speeds(left, gg).lambda1, fp.invariant);
    const State s = fan_state(WaveFamily::one, xi, fp, gg);
    const double c = std::sqrt(gg.value() * s.h);
    const double scale = std::max(1.0, std::abs(fp.invariant));
    EXPECT_NEAR(s.u - c, xi, 1e-12 * scale);
    EXPECT_NEAR(s.u + 2 * c, fp.invariant, 1e-12 * scale);
    // The fan state lies on the rarefaction locus through the foot.
    EXPECT_NEAR(rarefaction_u(WaveFamily::one, s.h, left, gg), s.u, 1e-12 * scale);
  }
}
