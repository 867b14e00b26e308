#pragma once

//! \file motion.hpp
//! \brief Piecewise-C1 deformation-gradient histories with analytic velocity
//! gradients and explicit one-sided derivatives at breakpoints.

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "rtplast/tensor.hpp"

namespace rtp {

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

//! Which one-sided derivative to take at a breakpoint. Away from breakpoints
//! both sides agree.
enum class Side { Left, Right };

class Motion {
 public:
  virtual ~Motion() = default;

  virtual Mat3 F(double t) const = 0;
  //! One-sided limit of F at t. F is continuous for valid motions, so the
  //! default ignores the side.
  virtual Mat3 F(double t, Side) const { return F(t); }
  //! Velocity gradient L = F' F^-1, using the one-sided derivative `side`.
  virtual Mat3 L(double t, Side side) const = 0;
  //! Interior instants where the left and right derivatives may differ.
  virtual std::vector<double> breakpoints() const { return {}; }

  virtual double t_begin() const { return 0.0; }
  virtual double t_end() const { return std::numeric_limits<double>::infinity(); }

 protected:
  void check_domain(double t) const;
};

//! F(t) = exp(t L0).
class ConstantVelocityGradient final : public Motion {
 public:
  explicit ConstantVelocityGradient(const Mat3& l0) : l0_(l0) {}

  Mat3 F(double t) const override;
  Mat3 L(double t, Side) const override;

 private:
  Mat3 l0_;
};

//! F(t) = I + rate t e1 x e2.
class SimpleShear final : public Motion {
 public:
  explicit SimpleShear(double rate) : rate_(rate) {}

  Mat3 F(double t) const override;
  Mat3 L(double t, Side) const override;

 private:
  double rate_;
};

//! F(t) = rotation by rate t about a unit axis.
class RigidRotation final : public Motion {
 public:
  RigidRotation(const Vec3& axis, double rate);

  Mat3 F(double t) const override;
  Mat3 L(double t, Side) const override;
  Orth3 rotation(double t) const;

 private:
  Vec3 axis_;
  double rate_;
};

//! Segments composed multiplicatively: on the i-th segment
//! F(t) = F_i(t - t_i) F_{i-1}(d_{i-1}) ... F_0(d_0).
class PiecewiseMotion final : public Motion {
 public:
  struct Segment {
    double duration;
    std::shared_ptr<const Motion> motion;
  };

  explicit PiecewiseMotion(std::vector<Segment> segments);

  Mat3 F(double t) const override { return F(t, Side::Right); }
  Mat3 F(double t, Side side) const override;
  Mat3 L(double t, Side side) const override;
  std::vector<double> breakpoints() const override;
  double t_end() const override { return starts_.back(); }

  std::size_t size() const { return segments_.size(); }

 private:
  //! Index of the segment owning t, honoring the side at junctions.
  std::size_t locate(double t, Side side) const;

  std::vector<Segment> segments_;
  std::vector<double> starts_;       // size() + 1 entries; last is the total duration
  std::vector<Mat3> accumulated_;    // F at each segment start
};

//! Frame change of a base motion: F*(t) = Q(t) F(t), Q(t) the rotation by
//! spin_rate t about `axis`. Then L* = Q L Q^T + Q' Q^T.
class SuperposedRotation final : public Motion {
 public:
  SuperposedRotation(std::shared_ptr<const Motion> base, const Vec3& axis, double spin_rate);

  Mat3 F(double t) const override;
  Mat3 F(double t, Side side) const override;
  Mat3 L(double t, Side side) const override;
  std::vector<double> breakpoints() const override { return base_->breakpoints(); }
  double t_begin() const override { return base_->t_begin(); }
  double t_end() const override { return base_->t_end(); }

  Orth3 rotation(double t) const;

 private:
  std::shared_ptr<const Motion> base_;
  Vec3 axis_;
  double spin_rate_;
};

struct Kinematics {
  Sym3 d;
  Skw3 w;
};

//! D = sym L, W = skw L from the analytic velocity gradient.
Kinematics kinematics(const Motion& m, double t, Side side);

struct MotionViolation {
  double t;
  std::string what;
};

struct MotionReport {
  std::vector<MotionViolation> violations;
  std::vector<double> breakpoints;

  bool ok() const { return violations.empty(); }
};

//! Checks det F > 0 on the grid and continuity of F across breakpoints
//! (|F(t-) - F(t+)| <= 1e-10).
MotionReport validate(const Motion& m, const std::vector<double>& t_grid);

}  // namespace rtp
