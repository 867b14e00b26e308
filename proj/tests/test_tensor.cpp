#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rtplast/tensor.hpp"

namespace rtp {
namespace {

void expect_sym_near(const Sym3& a, const Sym3& b, double tol) {
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

TEST(Tensor, Trace) {
  EXPECT_DOUBLE_EQ(trace(Sym3::identity()), 3.0);
  EXPECT_DOUBLE_EQ(trace(Sym3::diag(1, -1, 0)), 0.0);
  EXPECT_DOUBLE_EQ(trace(Sym3::diag(2, 3, 4)), 9.0);
}

TEST(Tensor, Deviator) {
  expect_sym_near(deviator(Sym3::identity()), Sym3{}, 0.0);
  expect_sym_near(deviator(Sym3::diag(1, -1, 0)), Sym3::diag(1, -1, 0), 0.0);
  expect_sym_near(deviator(Sym3::diag(3, 0, 0)), Sym3::diag(2, -1, -1), 1e-15);
}

TEST(Tensor, InnerCountsOffDiagonalsTwice) {
  EXPECT_DOUBLE_EQ(inner(Sym3::identity(), Sym3::identity()), 3.0);
  const Sym3 shear(0, 0, 0, 0, 0, 1);
  EXPECT_DOUBLE_EQ(inner(shear, shear), 2.0);
  // Against the full 3x3 contraction.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Sym3 a = random_sym(rng);
    const Sym3 b = random_sym(rng);
    EXPECT_NEAR(inner(a, b), (a.matrix().transpose() * b.matrix()).trace(), 1e-13);
    EXPECT_NEAR(inner(a, a), norm(a) * norm(a), 1e-13);
  }
}

TEST(Tensor, Norm) {
  EXPECT_DOUBLE_EQ(norm(Sym3{}), 0.0);
  EXPECT_DOUBLE_EQ(norm(Sym3::diag(1, -1, 0)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(norm(Sym3::identity()), std::sqrt(3.0));
}

TEST(Tensor, Rotate) {
  const Sym3 s(1, 2, 3, 0.4, 0.5, 0.6);
  expect_sym_near(rotate(Orth3{}, s), s, 0.0);

  std::mt19937_64 rng(1);
  const Orth3 q = random_rotation(rng);
  expect_sym_near(rotate(q, Sym3::identity()), Sym3::identity(), 1e-14);

  const Orth3 quarter = Orth3::rotation(Vec3::UnitZ(), M_PI / 2);
  expect_sym_near(rotate(quarter, Sym3::diag(1, 2, 3)), Sym3::diag(2, 1, 3), 1e-15);
}

TEST(Tensor, OrthRejectsNonOrthogonal) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = 1e-6;
  EXPECT_THROW(Orth3{m}, NotOrthogonal);
  EXPECT_THROW(Orth3{2.0 * Mat3::Identity()}, NotOrthogonal);
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;
  EXPECT_NO_THROW(Orth3{reflection});
}

TEST(Tensor, JaumannToMaterial) {
  const Sym3 rate(0.1, 0.2, 0.3, 0.4, 0.5, 0.6);
  expect_sym_near(jaumann_to_material(rate, Sym3(1, 2, 3, 4, 5, 6), Skw3{}), rate, 0.0);
  expect_sym_near(jaumann_to_material(Sym3{}, Sym3::identity(), Skw3(0.3, -0.2, 0.7)), Sym3{}, 0.0);

  // Hand commutator: T = e1 x e1, W = omega (e1 x e2 - e2 x e1).
  // W T has a single entry (2,1) = -omega; T W has (1,2) = omega.
  // W T - T W = -omega (e1 x e2 + e2 x e1).
  const double omega = 0.7;
  const Sym3 out = jaumann_to_material(Sym3{}, Sym3::diag(1, 0, 0), Skw3(0, 0, omega));
  expect_sym_near(out, Sym3(0, 0, 0, 0, 0, -omega), 1e-16);
}

TEST(TensorProperties, RandomizedInvariants) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Orth3 q = random_rotation(rng);
    EXPECT_NEAR(q.det(), 1.0, 1e-12);
    const Sym3 a = random_sym(rng);
    const Sym3 b = random_sym(rng);
    expect_sym_near(rotate(q, rotate(q.transpose(), a)), a, 1e-12);
    EXPECT_NEAR(inner(rotate(q, a), rotate(q, b)), inner(a, b), 1e-12);
    EXPECT_NEAR(norm(rotate(q, a)), norm(a), 1e-12);
    EXPECT_NEAR(trace(deviator(a)), 0.0, 1e-14);

    const Skw3 w = Skw3::skw(random_sym(rng).matrix() + q.matrix());
    const Mat3 full = a.matrix() + w.matrix() * a.matrix() - a.matrix() * w.matrix();
    EXPECT_LE((full - full.transpose()).norm(), 1e-14);
    expect_sym_near(jaumann_to_material(a, a, w), Sym3::sym(full), 1e-14);
  }
}

TEST(Tensor, SymSkwSplit) {
  Mat3 m;
  m << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  const Mat3 back = Sym3::sym(m).matrix() + Skw3::skw(m).matrix();
  EXPECT_LE((back - m).norm(), 1e-15);
  EXPECT_DOUBLE_EQ(norm(Skw3(0, 0, 1)), std::sqrt(2.0));
  EXPECT_LE((hat(Vec3(1, 2, 3)) * Vec3(4, 5, 6) - Vec3(1, 2, 3).cross(Vec3(4, 5, 6))).norm(), 1e-15);
}

}  // namespace
}  // namespace rtp
