#include "rtplast/motion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

namespace rtp {

namespace {

constexpr double kTimeSlack = 1e-12;

bool same_time(double a, double b) {
  return std::abs(a - b) <= kTimeSlack * std::max(1.0, std::abs(b));
}

}  // namespace

void Motion::check_domain(double t) const {
  const double lo = t_begin();
  const double hi = t_end();
  if (!std::isfinite(t) || t < lo - kTimeSlack * std::max(1.0, std::abs(lo)) ||
      (std::isfinite(hi) && t > hi + kTimeSlack * std::max(1.0, std::abs(hi)))) {
    std::ostringstream os;
    os << "time " << t << " outside motion domain [" << lo << ", " << hi << "]";
    throw OutOfDomain(os.str());
  }
}

Mat3 ConstantVelocityGradient::F(double t) const {
  check_domain(t);
  return (t * l0_).exp();
}

Mat3 ConstantVelocityGradient::L(double t, Side) const {
  check_domain(t);
  return l0_;
}

Mat3 SimpleShear::F(double t) const {
  check_domain(t);
  Mat3 f = Mat3::Identity();
  f(0, 1) = rate_ * t;
  return f;
}

Mat3 SimpleShear::L(double t, Side) const {
  check_domain(t);
  Mat3 l = Mat3::Zero();
  l(0, 1) = rate_;
  return l;
}

RigidRotation::RigidRotation(const Vec3& axis, double rate) : axis_(axis), rate_(rate) {
  if (!(axis.norm() > 0.0)) throw std::invalid_argument("RigidRotation: zero axis");
  axis_.normalize();
}

Orth3 RigidRotation::rotation(double t) const { return Orth3::rotation(axis_, rate_ * t); }

Mat3 RigidRotation::F(double t) const {
  check_domain(t);
  return rotation(t).matrix();
}

Mat3 RigidRotation::L(double t, Side) const {
  check_domain(t);
  return rate_ * hat(axis_);
}

PiecewiseMotion::PiecewiseMotion(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("PiecewiseMotion: no segments");
  starts_.reserve(segments_.size() + 1);
  accumulated_.reserve(segments_.size());
  double t = 0.0;
  Mat3 acc = Mat3::Identity();
  for (const auto& s : segments_) {
    if (!s.motion) throw std::invalid_argument("PiecewiseMotion: null segment motion");
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw std::invalid_argument("PiecewiseMotion: segment durations must be positive");
    starts_.push_back(t);
    accumulated_.push_back(acc);
    acc = s.motion->F(s.duration, Side::Left) * acc;
    t += s.duration;
  }
  starts_.push_back(t);
}

std::size_t PiecewiseMotion::locate(double t, Side side) const {
  check_domain(t);
  const std::size_t n = segments_.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (same_time(t, starts_[i])) return side == Side::Left ? i - 1 : i;
    if (t < starts_[i]) return i - 1;
  }
  return n - 1;
}

Mat3 PiecewiseMotion::F(double t, Side side) const {
  const std::size_t i = locate(t, side);
  const double local = std::clamp(t - starts_[i], 0.0, segments_[i].duration);
  return segments_[i].motion->F(local, side) * accumulated_[i];
}

Mat3 PiecewiseMotion::L(double t, Side side) const {
  const std::size_t i = locate(t, side);
  const double local = std::clamp(t - starts_[i], 0.0, segments_[i].duration);
  // (F_i(s) Acc)' (F_i(s) Acc)^-1 = F_i'(s) F_i(s)^-1
  return segments_[i].motion->L(local, side);
}

std::vector<double> PiecewiseMotion::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    for (double b : segments_[i].motion->breakpoints())
      if (b > 0.0 && b < segments_[i].duration) out.push_back(starts_[i] + b);
    if (i + 1 < segments_.size()) out.push_back(starts_[i + 1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SuperposedRotation::SuperposedRotation(std::shared_ptr<const Motion> base, const Vec3& axis,
                                       double spin_rate)
    : base_(std::move(base)), axis_(axis), spin_rate_(spin_rate) {
  if (!base_) throw std::invalid_argument("SuperposedRotation: null base motion");
  if (!(axis.norm() > 0.0)) throw std::invalid_argument("SuperposedRotation: zero axis");
  axis_.normalize();
}

Orth3 SuperposedRotation::rotation(double t) const {
  return Orth3::rotation(axis_, spin_rate_ * t);
}

Mat3 SuperposedRotation::F(double t) const { return rotation(t).matrix() * base_->F(t); }

Mat3 SuperposedRotation::F(double t, Side side) const {
  return rotation(t).matrix() * base_->F(t, side);
}

Mat3 SuperposedRotation::L(double t, Side side) const {
  const Mat3 q = rotation(t).matrix();
  return q * base_->L(t, side) * q.transpose() + spin_rate_ * hat(axis_);
}

Kinematics kinematics(const Motion& m, double t, Side side) {
  const Mat3 l = m.L(t, side);
  return {Sym3::sym(l), Skw3::skw(l)};
}

MotionReport validate(const Motion& m, const std::vector<double>& t_grid) {
  MotionReport report;
  report.breakpoints = m.breakpoints();
  for (double t : t_grid) {
    try {
      const double det = m.F(t).determinant();
      if (!(det > 0.0)) {
        std::ostringstream os;
        os << "det F = " << det << " is not positive";
        report.violations.push_back({t, os.str()});
      }
    } catch (const OutOfDomain& e) {
      report.violations.push_back({t, e.what()});
    }
  }
  for (double b : report.breakpoints) {
    const double jump = (m.F(b, Side::Left) - m.F(b, Side::Right)).norm();
    if (jump > 1e-10) {
      std::ostringstream os;
      os << "F discontinuous at breakpoint (jump " << jump << ")";
      report.violations.push_back({b, os.str()});
    }
  }
  return report;
}

}  // namespace rtp
