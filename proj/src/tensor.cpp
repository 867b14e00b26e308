#include "rtplast/tensor.hpp"

#include <cmath>

namespace rtp {

Sym3 Sym3::sym(const Mat3& m) {
  return {m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(1, 2) + m(2, 1)), 0.5 * (m(0, 2) + m(2, 0)),
          0.5 * (m(0, 1) + m(1, 0))};
}

Mat3 Sym3::matrix() const {
  Mat3 m;
  m << v_[0], v_[5], v_[4],
       v_[5], v_[1], v_[3],
       v_[4], v_[3], v_[2];
  return m;
}

Sym3& Sym3::operator+=(const Sym3& o) {
  for (std::size_t i = 0; i < 6; ++i) v_[i] += o.v_[i];
  return *this;
}

Sym3& Sym3::operator-=(const Sym3& o) {
  for (std::size_t i = 0; i < 6; ++i) v_[i] -= o.v_[i];
  return *this;
}

Sym3& Sym3::operator*=(double s) {
  for (auto& x : v_) x *= s;
  return *this;
}

Sym3& Sym3::operator/=(double s) {
  for (auto& x : v_) x /= s;
  return *this;
}

Sym3 operator+(Sym3 a, const Sym3& b) { return a += b; }
Sym3 operator-(Sym3 a, const Sym3& b) { return a -= b; }
Sym3 operator-(Sym3 a) { return a *= -1.0; }
Sym3 operator*(double s, Sym3 a) { return a *= s; }
Sym3 operator*(Sym3 a, double s) { return a *= s; }
Sym3 operator/(Sym3 a, double s) { return a /= s; }

Skw3 Skw3::skw(const Mat3& m) {
  return {0.5 * (m(1, 2) - m(2, 1)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(0, 1) - m(1, 0))};
}

double Skw3::operator()(int i, int j) const { return matrix()(i, j); }

Mat3 Skw3::matrix() const {
  Mat3 m;
  m << 0.0, v_[2], v_[1],
       -v_[2], 0.0, v_[0],
       -v_[1], -v_[0], 0.0;
  return m;
}

Skw3 operator+(const Skw3& a, const Skw3& b) {
  return {a.w23() + b.w23(), a.w13() + b.w13(), a.w12() + b.w12()};
}

Skw3 operator*(double s, const Skw3& a) { return {s * a.w23(), s * a.w13(), s * a.w12()}; }

double norm(const Skw3& w) {
  return std::sqrt(2.0 * (w.w23() * w.w23() + w.w13() * w.w13() + w.w12() * w.w12()));
}

Orth3::Orth3(const Mat3& q) : q_(q) {
  if (!q.allFinite()) throw NotOrthogonal("Orth3: non-finite entries");
  const double defect = (q.transpose() * q - Mat3::Identity()).norm();
  if (defect > tolerance) throw NotOrthogonal("Orth3: |Q^T Q - I| exceeds tolerance");
  if (std::abs(std::abs(q.determinant()) - 1.0) > tolerance)
    throw NotOrthogonal("Orth3: |det Q| differs from 1");
}

Orth3 Orth3::rotation(const Vec3& axis, double angle) {
  return Orth3(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix(), Unchecked{});
}

Orth3 Orth3::transpose() const { return Orth3(q_.transpose(), Unchecked{}); }

double trace(const Sym3& s) { return s[0] + s[1] + s[2]; }

Sym3 deviator(const Sym3& s) {
  const double p = trace(s) / 3.0;
  return {s[0] - p, s[1] - p, s[2] - p, s[3], s[4], s[5]};
}

double inner(const Sym3& a, const Sym3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

double norm(const Sym3& s) { return std::sqrt(inner(s, s)); }

Sym3 rotate(const Orth3& q, const Sym3& s) {
  const Mat3& m = q.matrix();
  return Sym3::sym(m * s.matrix() * m.transpose());
}

Skw3 rotate(const Orth3& q, const Skw3& w) {
  const Mat3& m = q.matrix();
  return Skw3::skw(m * w.matrix() * m.transpose());
}

Sym3 jaumann_to_material(const Sym3& jaumann_rate, const Sym3& stress, const Skw3& spin) {
  const Mat3 t = stress.matrix();
  const Mat3 w = spin.matrix();
  // W T - T W is symmetric for symmetric T and skew W.
  return jaumann_rate + Sym3::sym(w * t - t * w);
}

Mat3 hat(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return m;
}

Sym3 random_sym(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng), n(rng), n(rng), n(rng), n(rng)};
}

Orth3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = n(rng);
  Eigen::HouseholderQR<Mat3> qr(a);
  Mat3 q = qr.householderQ();
  // Fix column signs so R has a positive diagonal, then force det = +1.
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return Orth3(q);
}

Vec3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-8) v = Vec3(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace rtp
