#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "rtplast/analysis.hpp"

namespace rtp {
namespace {

const Sym3 kUnitShear = Sym3::diag(1, -1, 0) / std::sqrt(2.0);

Sym3 limit_point(const MaterialModel& m, const Sym3& dir, const Sym3& offset = {}) {
  const auto p = locate_limit_point(m, dir, 20.0, offset);
  if (!p) throw std::runtime_error("no limit point");
  return *p;
}

TEST(DecomposeStretching, ElasticModeHasNoPlasticPart) {
  const MaterialModel m = default_model();
  const Sym3 t(0.4, -0.1, 0.2, 0.0, 0.3, -0.2);
  const Sym3 d(0.1, 0.2, -0.3, 0.05, 0.0, 0.1);
  const Skw3 w(0.3, 0.1, -0.2);
  const Sym3 tdot = rhs(m, ResponseMode::Elastic, t, d, w);
  const StretchingSplit split = decompose_stretching(m, t, tdot, w, ResponseMode::Elastic);
  EXPECT_LE(norm(split.plastic), 0.0);
  EXPECT_LE(norm(split.elastic - d), 1e-14);
}

TEST(DecomposeStretching, PartsAddUpAlongPlasticResponse) {
  const MaterialModel m = default_model();
  const SuperposedRotation motion(std::make_shared<SimpleShear>(1.0), Vec3::UnitX(), 0.4);
  const Trajectory traj = integrate(m, motion, {0.0, Sym3{}, 0.5}, 1.0);
  int plastic = 0;
  for (const Segment& seg : traj.segments) {
    if (seg.mode != ResponseMode::Plastic) continue;
    for (const Sample& s : seg.samples) {
      ++plastic;
      const StretchingSplit split = decompose_stretching(m, s.stress, s.stress_rate, s.w, seg.mode);
      EXPECT_LE(norm(split.elastic + split.plastic - s.d), 1e-8);
      EXPECT_LE(norm(split.plastic - plastic_stretching(m, s.stress, s.d)), 1e-8);
      EXPECT_NEAR(hardening_rate_check(m, s.stress, split.plastic), s.k_rate, 1e-8);
    }
  }
  EXPECT_GT(plastic, 0);
}

TEST(HardeningRateCheck, Examples) {
  const MaterialModel m = default_model();
  const Sym3 t = 1.3 * kUnitShear;
  EXPECT_DOUBLE_EQ(hardening_rate_check(m, t, Sym3{}), 0.0);
  const Sym3 y = m.a_inv(t, m.b(t));
  // |D^p| = 2 |y| gives rate 2 mu.
  EXPECT_NEAR(hardening_rate_check(m, t, -2.0 * y), 2.0 * mu(m, t), 1e-14);
}

TEST(Equilibrium, StretchingAndDrift) {
  const MaterialModel m = default_model();
  const Sym3 t = limit_point(m, kUnitShear, Sym3::identity());
  EXPECT_NEAR(m.f(t), 2.0, 1e-10);
  for (double lambda : {0.5, 1.0, 2.0}) {
    const Sym3 d = equilibrium_stretching(m, t, lambda);
    EXPECT_NEAR(psi(m, t, d), lambda, 1e-10);
    EXPECT_NEAR(trace(d), 0.0, 1e-14);
    EXPECT_LE(norm(c_apply(m, t, d)), 1e-9);
    EXPECT_LE(verify_equilibrium(m, t, lambda, 1.0), 1e-7);
  }
  EXPECT_LE(norm(equilibrium_stretching(m, t, 2.0) - 2.0 * equilibrium_stretching(m, t, 1.0)), 1e-14);
  EXPECT_THROW(equilibrium_stretching(m, t, 0.0), std::invalid_argument);
  EXPECT_THROW(verify_equilibrium(m, 1.5 * kUnitShear, 1.0, 1.0), std::invalid_argument);
}

TEST(Equilibrium, OffSurfaceStressDrifts) {
  const MaterialModel m = default_model();
  const Sym3 t = 0.99 * limit_point(m, kUnitShear);
  const Sym3 d = -1.0 * m.a_inv(t, m.b(t));
  EXPECT_GT(equilibrium_drift(m, t, d, 1.0), 1e-3);
}

TEST(LimitRatio, VonMisesIsInfinite) {
  const MaterialModel m = default_model();
  EXPECT_TRUE(limit_ratio_rhs(m, limit_point(m, kUnitShear)).is_infinite());
  EXPECT_THROW(LimitRatio::infinite().value(), std::bad_optional_access);
}

TEST(LimitRatio, DruckerPragerMatchesDeviatoricSplit) {
  const MaterialModel m = default_model(YieldKind::DruckerPragerLike, 0.3);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Sym3 dir = deviator(random_sym(rng));
    const Sym3 t = limit_point(m, dir, -0.5 * Sym3::identity());
    const Sym3 x = m.a_inv(t, m.b(t));
    const LimitRatio r = limit_ratio_rhs(m, t);
    ASSERT_FALSE(r.is_infinite());
    // |dev X| / |tr X| written out through the deviator, not the trace identity.
    EXPECT_NEAR(r.value(), norm(deviator(x)) / std::abs(trace(x)), 1e-12);
    // Isotropic model: ratio constant over the surface.
    EXPECT_NEAR(r.value(), limit_ratio_rhs(m, limit_point(m, kUnitShear)).value(), 1e-9);
  }
}

TEST(StressDrivenStretching, GrowsTowardsTheLimitSurface) {
  const MaterialModel m = default_model();
  const Sym3 end = limit_point(m, kUnitShear);
  for (double s0 : {0.5, 1.5}) {
    const StressPath path = radial_path(end, s0);
    EXPECT_LE(norm(path.stress(1.0) - end), 1e-15);
    EXPECT_LE(norm(path.stress(0.0) - s0 * end), 1e-15);
    double prev = 0.0;
    for (double t : {0.5, 0.9, 0.99, 0.999}) {
      const double n = norm(stress_driven_stretching(m, path, t));
      EXPECT_GT(n, prev) << "s0 = " << s0 << ", t = " << t;
      prev = n;
    }
    EXPECT_THROW(stress_driven_stretching(m, path, 1.0), OnLimitSurface);
  }
}

TEST(StressDrivenStretching, RecoversRateUnderPlasticLaw) {
  const MaterialModel m = default_model(YieldKind::DruckerPragerLike);
  const StressPath path = radial_path(limit_point(m, kUnitShear), 0.5);
  for (double t : {0.2, 0.6}) {
    const Sym3 d = stress_driven_stretching(m, path, t);
    EXPECT_LE(norm(c_apply(m, path.stress(t), d) - path.rate(t)), 1e-10);
  }
}

TEST(Normality, Checks) {
  const MaterialModel m = default_model();
  const Sym3 t(0.8, -0.3, 0.1, 0.2, -0.4, 0.6);
  const Sym3 d = m.grad_f(t);
  const Sym3 dp = plastic_stretching(m, t, d);
  EXPECT_LE(normality_check(m, t, dp), 1e-12);
  EXPECT_NEAR(normality_check(m, t, -1.0 * dp), 2.0, 1e-12);
  const Sym3 off = dp + 0.5 * norm(dp) * Sym3(0, 0, 0, 1, 0, 0);
  EXPECT_GT(normality_check(m, t, off), 1e-3);
}

TEST(Normality, StressingPower) {
  const MaterialModel m = default_model();
  const Sym3 t = 1.2 * kUnitShear;
  const Sym3 d = kUnitShear;
  const Sym3 tdot = rhs(m, ResponseMode::Plastic, t, d, Skw3{});
  const Sym3 dp = -psi(m, t, d) * m.a_inv(t, m.b(t));
  EXPECT_NEAR(stressing_power(m, t, d, tdot), inner(tdot, dp), 1e-14);
  EXPECT_GT(stressing_power(m, t, d, tdot), 0.0);
  EXPECT_DOUBLE_EQ(stressing_power(m, t, Sym3(0, 0, 0, 0, 0, 1), tdot), 0.0);
}

TEST(PlasticWork, ElasticResponseDoesNoWork) {
  const MaterialModel m = default_model();
  const SimpleShear motion(1.0);
  const Trajectory traj = integrate(m, motion, {0.0, Sym3{}, 10.0}, 1.0);
  EXPECT_DOUBLE_EQ(plastic_work(traj, m, motion), 0.0);
}

TEST(PlasticWork, PositiveAndConverged) {
  const MaterialModel m = default_model();
  const SimpleShear motion(1.0);
  IntegrationOptions fine;
  fine.dt_max = 5e-4;
  const double w1 = plastic_work(integrate(m, motion, {0.0, Sym3{}, 0.5}, 1.5), m, motion);
  const double w2 = plastic_work(integrate(m, motion, {0.0, Sym3{}, 0.5}, 1.5, fine), m, motion);
  EXPECT_GT(w1, 0.0);
  EXPECT_LE(std::abs(w1 - w2), 1e-3 * std::abs(w2));
}

TEST(AnalysisProperties, RotationalCovariance) {
  std::mt19937_64 rng(23);
  for (auto kind : {YieldKind::VonMises, YieldKind::DruckerPragerLike}) {
    const MaterialModel m = default_model(kind);
    for (int i = 0; i < 50; ++i) {
      const Orth3 q = random_rotation(rng);
      const Sym3 t = random_sym(rng);
      const Sym3 d = random_sym(rng);
      const Sym3 qt = rotate(q, t);
      const Sym3 qd = rotate(q, d);
      EXPECT_LE(norm(plastic_stretching(m, qt, qd) - rotate(q, plastic_stretching(m, t, d))), 1e-10);
      const Sym3 dp = plastic_stretching(m, t, d);
      EXPECT_NEAR(normality_check(m, qt, rotate(q, dp)), normality_check(m, t, dp), 1e-10);
      EXPECT_NEAR(hardening_rate_check(m, qt, rotate(q, dp)), hardening_rate_check(m, t, dp), 1e-10);
    }
  }
}

TEST(LimitSurfaceScan, FindsPointsOnDeviatoricRays) {
  const MaterialModel m = default_model();
  std::vector<Sym3> dirs = {kUnitShear, Sym3(0, 0, 0, 1, 0, 0), Sym3::diag(2, -1, -1)};
  const LimitSurfaceReport r = scan_limit_surface(m, dirs, 5.0, 11);
  ASSERT_EQ(r.rays.size(), 3u);
  for (const auto& ray : r.rays) {
    ASSERT_TRUE(ray.point.has_value());
    EXPECT_NEAR(m.f(*ray.point), 2.0, 1e-10);
    EXPECT_EQ(ray.brackets.size(), 1u);
    ASSERT_TRUE(ray.equilibrium_direction.has_value());
  }
  EXPECT_FALSE(locate_limit_point(m, kUnitShear, 1.5).has_value());
  EXPECT_THROW(scan_limit_surface(m, dirs, 5.0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace rtp
