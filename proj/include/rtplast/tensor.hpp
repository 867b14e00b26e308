#pragma once

//! \file tensor.hpp
//! \brief Fixed-size second-order tensors on 3-space.
//!
//! Sym3 and Skw3 store only their independent components. General tensors
//! (deformation gradients, velocity gradients) use Eigen's Matrix3d.

#include <array>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace rtp {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

//! Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

//! Symmetric tensor stored in Voigt order (11, 22, 33, 23, 13, 12).
//! Off-diagonal slots hold the tensor component itself, not an engineering
//! (doubled) value; inner() applies the factor 2.
class Sym3 {
 public:
  constexpr Sym3() = default;
  constexpr Sym3(double xx, double yy, double zz, double yz, double xz, double xy)
      : v_{xx, yy, zz, yz, xz, xy} {}

  static constexpr Sym3 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static constexpr Sym3 diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }
  //! Symmetric part of a general tensor.
  static Sym3 sym(const Mat3& m);

  double operator()(int i, int j) const { return v_[slot(i, j)]; }
  double& operator()(int i, int j) { return v_[slot(i, j)]; }

  double operator[](int voigt) const { return v_[static_cast<std::size_t>(voigt)]; }
  double& operator[](int voigt) { return v_[static_cast<std::size_t>(voigt)]; }

  const std::array<double, 6>& voigt() const { return v_; }

  Mat3 matrix() const;

  Sym3& operator+=(const Sym3& o);
  Sym3& operator-=(const Sym3& o);
  Sym3& operator*=(double s);
  Sym3& operator/=(double s);

  bool operator==(const Sym3&) const = default;

 private:
  static constexpr std::size_t slot(int i, int j) {
    constexpr std::size_t map[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};
    return map[i][j];
  }

  std::array<double, 6> v_{};
};

Sym3 operator+(Sym3 a, const Sym3& b);
Sym3 operator-(Sym3 a, const Sym3& b);
Sym3 operator-(Sym3 a);
Sym3 operator*(double s, Sym3 a);
Sym3 operator*(Sym3 a, double s);
Sym3 operator/(Sym3 a, double s);

//! Skew tensor stored as its upper-triangle entries (W23, W13, W12), with
//! 1-based component names.
class Skw3 {
 public:
  constexpr Skw3() = default;
  constexpr Skw3(double w23, double w13, double w12) : v_{w23, w13, w12} {}

  //! Skew part of a general tensor.
  static Skw3 skw(const Mat3& m);

  double w23() const { return v_[0]; }
  double w13() const { return v_[1]; }
  double w12() const { return v_[2]; }

  double operator()(int i, int j) const;

  Mat3 matrix() const;

  bool operator==(const Skw3&) const = default;

 private:
  std::array<double, 3> v_{};
};

Skw3 operator+(const Skw3& a, const Skw3& b);
Skw3 operator*(double s, const Skw3& a);
double norm(const Skw3& w);

//! Orthogonal tensor. Construction rejects matrices violating
//! |Q^T Q - I| <= 1e-12 or |det Q| = 1 within 1e-12.
class Orth3 {
 public:
  static constexpr double tolerance = 1e-12;

  Orth3() : q_(Mat3::Identity()) {}
  explicit Orth3(const Mat3& q);

  //! Rotation by angle (radians) about a unit axis, right-handed.
  static Orth3 rotation(const Vec3& axis, double angle);

  const Mat3& matrix() const { return q_; }
  Orth3 transpose() const;
  double det() const { return q_.determinant(); }

 private:
  struct Unchecked {};
  Orth3(const Mat3& q, Unchecked) : q_(q) {}

  Mat3 q_;
};

double trace(const Sym3& s);
Sym3 deviator(const Sym3& s);
//! Full double contraction A:B = tr(A^T B).
double inner(const Sym3& a, const Sym3& b);
double norm(const Sym3& s);

//! Q S Q^T.
Sym3 rotate(const Orth3& q, const Sym3& s);
//! Q W Q^T.
Skw3 rotate(const Orth3& q, const Skw3& w);

//! Material rate from the Jaumann rate: T' = T° + W T - T W.
Sym3 jaumann_to_material(const Sym3& jaumann_rate, const Sym3& stress, const Skw3& spin);

//! Skew tensor of the cross product with `axis`: hat(a) v = a x v.
Mat3 hat(const Vec3& axis);

//! Random draws for property checks and randomized verification suites.
Sym3 random_sym(std::mt19937_64& rng, double scale = 1.0);
//! Uniform-enough proper rotation (det = +1) from QR of a Gaussian matrix.
Orth3 random_rotation(std::mt19937_64& rng);
Vec3 random_unit_vector(std::mt19937_64& rng);

}  // namespace rtp
