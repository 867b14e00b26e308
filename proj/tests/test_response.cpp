#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "rtplast/response.hpp"

namespace rtp {
namespace {

Sym3 planar_stress(double s) { return Sym3::diag(s, -s, 0.0); }

// Constant L with D = d (e1 x e2)_sym and W12 = omega.
Mat3 shear_with_spin(double d, double omega) {
  Mat3 l = Mat3::Zero();
  l(0, 1) = d + omega;
  l(1, 0) = d - omega;
  return l;
}

void expect_trajectory_invariants(const MaterialModel& m, const Trajectory& traj) {
  for (const Segment& seg : traj.segments) {
    for (const Sample& s : seg.samples) {
      EXPECT_LE(m.f(s.stress), s.k + 1e-7) << "t = " << s.t;
      if (seg.mode == ResponseMode::Plastic) EXPECT_NEAR(m.f(s.stress), s.k, 1e-7) << "t = " << s.t;
      else EXPECT_EQ(s.k, seg.samples.front().k);
    }
  }
}

TEST(Classify, Cases) {
  const MaterialModel m = default_model();
  const IntegrationOptions opts;
  const Sym3 t = planar_stress(1.0);
  const double k = m.f(t);
  const Sym3 n = m.grad_f(t);
  EXPECT_TRUE(in_elastic_domain(m, t, k, 0.0));
  EXPECT_FALSE(in_elastic_domain(m, t, k - 1e-6, 1e-9));
  EXPECT_EQ(classify(m, t, k + 0.1, n, opts), CaseLabel::I);
  EXPECT_EQ(classify(m, t, k, -1.0 * n, opts), CaseLabel::II);
  EXPECT_EQ(classify(m, t, k, Sym3(0, 0, 0, 0, 0, 1), opts), CaseLabel::III);
  EXPECT_EQ(classify(m, t, k, n, opts), CaseLabel::IV);
  EXPECT_THROW(classify(m, t, k - 1e-6, n, opts), AxiomViolated);
}

TEST(ResolveCaseIII, RigidRotationStaysElastic) {
  const MaterialModel m = default_model();
  const Sym3 t = planar_stress(1.0);
  const RigidRotation motion(Vec3::UnitZ(), 1.0);
  EXPECT_EQ(resolve_case_iii(m, {0.0, t, m.f(t)}, motion, {}), ResponseMode::Elastic);
  const Onset on = initial_response(m, {0.0, t, m.f(t)}, motion, {});
  EXPECT_EQ(on.label, CaseLabel::III);
  EXPECT_EQ(on.mode, ResponseMode::Elastic);
}

TEST(ResolveCaseIII, SpinDecidesDirection) {
  // At T = diag(1,-1,0), psi is proportional to T12, and T12' = 2 d - 2 omega.
  const MaterialModel m = default_model();
  const Sym3 t = planar_stress(1.0);
  const MaterialState st{0.0, t, m.f(t)};
  const ConstantVelocityGradient away(shear_with_spin(0.1, 0.5));
  const ConstantVelocityGradient into(shear_with_spin(0.1, -0.5));
  EXPECT_EQ(initial_response(m, st, away, {}).label, CaseLabel::III);
  EXPECT_EQ(resolve_case_iii(m, st, away, {}), ResponseMode::Elastic);
  EXPECT_EQ(resolve_case_iii(m, st, into, {}), ResponseMode::Plastic);
}

TEST(Rhs, Examples) {
  const MaterialModel m = default_model();
  const Sym3 t(1.2, -0.4, 0.1, 0.3, -0.6, 0.8);
  const Sym3 d(0.1, 0.0, -0.2, 0.05, 0.0, 0.3);
  EXPECT_LE(norm(rhs(m, ResponseMode::Elastic, t, d, Skw3{}) - m.a(t, d)), 1e-15);
  EXPECT_LE(norm(rhs(m, ResponseMode::Plastic, t, Sym3{}, Skw3{})), 1e-15);
  const Skw3 w(0.2, -0.1, 0.4);
  const Sym3 spin = Sym3::sym(w.matrix() * t.matrix() - t.matrix() * w.matrix());
  EXPECT_LE(norm(rhs(m, ResponseMode::Elastic, t, Sym3{}, w) - spin), 1e-15);
  const Sym3 y = m.a_inv(t, m.b(t));
  EXPECT_LE(norm(rhs(m, ResponseMode::Plastic, t, y, Skw3{}) - mu(m, t) * m.b(t)), 1e-13);
}

TEST(Integrate, ElasticSimpleShearClosedForm) {
  // T11' = g T12, T12' = mu_e g - g T11, T22 = -T11 from T = 0:
  // T12 = sin(g t), T11 = 1 - cos(g t).
  const MaterialModel m = default_model();
  const SimpleShear motion(1.0);
  const Trajectory traj = integrate(m, motion, {0.0, Sym3{}, 1e3}, 2.0 * M_PI);
  ASSERT_EQ(traj.segments.size(), 1u);
  EXPECT_EQ(traj.segments[0].entry_case, CaseLabel::I);
  for (const Sample& s : traj.segments[0].samples) {
    const Sym3 expect(1.0 - std::cos(s.t), std::cos(s.t) - 1.0, 0.0, 0.0, 0.0, std::sin(s.t));
    ASSERT_LE(norm(s.stress - expect), 1e-9) << "t = " << s.t;
  }
  for (double t : {0.123, 1.0, 4.567})
    EXPECT_NEAR(traj.stress_at(t)(0, 1), std::sin(t), 1e-9);
  EXPECT_THROW(traj.stress_at(7.0), OutOfDomain);
}

TEST(Integrate, ElasticToPlasticHardens) {
  const MaterialModel m = default_model();
  const SimpleShear motion(1.0);
  const Trajectory traj = integrate(m, motion, {0.0, Sym3{}, 0.5}, 1.0);
  ASSERT_EQ(traj.segments.size(), 2u);
  EXPECT_EQ(traj.segments[0].mode, ResponseMode::Elastic);
  EXPECT_EQ(traj.segments[0].end, SegmentEnd::YieldOnset);
  EXPECT_EQ(traj.segments[1].mode, ResponseMode::Plastic);
  EXPECT_NEAR(m.f(traj.segments[0].samples.back().stress), 0.5, 1e-9);
  double k_prev = 0.0;
  for (const Sample& s : traj.segments[1].samples) {
    EXPECT_GT(s.mu, 0.0);
    EXPECT_GT(s.k_rate, 0.0);
    EXPECT_GE(s.k, k_prev);
    k_prev = s.k;
  }
  EXPECT_GT(traj.final_state().k, 0.5);
  expect_trajectory_invariants(m, traj);
}

TEST(Integrate, ReversalUnloads) {
  const MaterialModel m = default_model();
  const PiecewiseMotion motion({{1.0, std::make_shared<SimpleShear>(1.0)},
                                {0.5, std::make_shared<SimpleShear>(-1.0)}});
  const Trajectory traj = integrate(m, motion, {0.0, Sym3{}, 0.5}, 1.5);
  ASSERT_EQ(traj.segments.size(), 3u);
  EXPECT_EQ(traj.segments[1].end, SegmentEnd::Breakpoint);
  EXPECT_EQ(traj.segments[2].mode, ResponseMode::Elastic);
  EXPECT_EQ(traj.segments[2].entry_case, CaseLabel::II);
  EXPECT_NEAR(traj.segments[2].samples.front().t, 1.0, 1e-15);
  expect_trajectory_invariants(m, traj);
}

TEST(Integrate, RigidRotationRotatesStress) {
  const MaterialModel m = default_model(YieldKind::DruckerPragerLike);
  const Sym3 t0(0.7, -0.2, 0.1, 0.3, -0.4, 0.5);
  const RigidRotation motion(Vec3(1, 2, 3), 1.3);
  for (double k0 : {m.f(t0) + 1.0, m.f(t0)}) {
    const Trajectory traj = integrate(m, motion, {0.0, t0, k0}, 2.0);
    ASSERT_EQ(traj.segments.size(), 1u);
    EXPECT_EQ(traj.segments[0].mode, ResponseMode::Elastic);
    for (const Sample& s : traj.segments[0].samples)
      ASSERT_LE(norm(s.stress - rotate(motion.rotation(s.t), t0)), 1e-8) << "t = " << s.t;
  }
}

TEST(Integrate, PlasticRatesSatisfyConsistency) {
  // k' = grad f : T' along plastic segments.
  const MaterialModel m = default_model();
  const SuperposedRotation motion(std::make_shared<SimpleShear>(2.0), Vec3(0, 1, 1), 0.7);
  const Trajectory traj = integrate(m, motion, {0.0, Sym3::diag(0.3, 0.0, -0.1), 0.4}, 1.0);
  int plastic = 0;
  for (const Segment& seg : traj.segments) {
    if (seg.mode != ResponseMode::Plastic) continue;
    for (const Sample& s : seg.samples) {
      ++plastic;
      EXPECT_NEAR(s.k_rate, inner(m.grad_f(s.stress), s.stress_rate), 1e-10);
      EXPECT_NEAR(s.k_rate, s.psi * s.mu, 1e-10);
    }
  }
  EXPECT_GT(plastic, 0);
  expect_trajectory_invariants(m, traj);
}

TEST(Integrate, PlasticFlowIntoTheConeApexIsRejected) {
  // D = c I: psi = 3 alpha (3 lambda_e + 2 mu_e) c > 0, and the deviatoric
  // part of psi B is 2 mu_e beta psi N with beta < 0, so |dev T| shrinks
  // linearly at about 0.54 per unit time from 0.1.
  const MaterialModel m = default_model(YieldKind::DruckerPragerLike, 0.3);
  const Sym3 t0 = 0.1 * Sym3::diag(1, -1, 0) / std::sqrt(2.0);
  const ConstantVelocityGradient motion(0.5 * Mat3::Identity());
  const Trajectory early = integrate(m, motion, {0.0, t0, m.f(t0)}, 0.1);
  EXPECT_EQ(early.segments.front().mode, ResponseMode::Plastic);
  EXPECT_LT(norm(deviator(early.final_state().stress)), norm(deviator(t0)));
  EXPECT_THROW(integrate(m, motion, {0.0, t0, m.f(t0)}, 1.0), SingularGradient);
}

TEST(Integrate, Errors) {
  const MaterialModel m = default_model();
  const SimpleShear motion(1.0);
  EXPECT_THROW(integrate(m, motion, {0.0, planar_stress(1.0), 0.1}, 1.0), AxiomViolated);
  EXPECT_THROW(integrate(m, motion, {0.0, Sym3{}, 1.0}, 0.0), std::invalid_argument);
  const PiecewiseMotion finite({{1.0, std::make_shared<SimpleShear>(1.0)}});
  EXPECT_THROW(integrate(m, finite, {0.0, Sym3{}, 1.0}, 2.0), OutOfDomain);
  IntegrationOptions bad;
  bad.tol_psi = 0.0;
  EXPECT_THROW(integrate(m, motion, {0.0, Sym3{}, 1.0}, 1.0, bad), std::invalid_argument);
}

}  // namespace
}  // namespace rtp
