#pragma once

//! \file analysis.hpp
//! \brief Post-processing of material-point responses: elastic/plastic split
//! of the stretching, the derived hardening rule, the limit surface
//! mu(T) = 0 and its equilibria, stress-driven paths approaching it,
//! normality and plastic work.

#include <functional>
#include <optional>
#include <vector>

#include "rtplast/constitutive.hpp"
#include "rtplast/motion.hpp"
#include "rtplast/response.hpp"

namespace rtp {

//! |mu(T)| is too small to solve the plastic law for D.
class OnLimitSurface : public Error {
 public:
  using Error::Error;
};

inline constexpr double kLimitSurfaceTol = 1e-10;

struct StretchingSplit {
  Sym3 elastic;
  Sym3 plastic;
};

//! D^e = A^-1[T°] with T° = T' - W T + T W; in plastic mode
//! D^p = -(grad f : T' / mu) A^-1[B], otherwise D^p = 0.
StretchingSplit decompose_stretching(const MaterialModel& model, const Sym3& stress,
                                     const Sym3& stress_rate, const Skw3& w, ResponseMode mode);

//! D^p = -psi(T, D) A^-1[B(T)] for a plastic sample.
Sym3 plastic_stretching(const MaterialModel& model, const Sym3& stress, const Sym3& d);

//! Hardening rate from the plastic stretching: |D^p| / |A^-1[B]| * mu(T).
double hardening_rate_check(const MaterialModel& model, const Sym3& stress, const Sym3& dp);

//! -lambda A^-1[B(T)]; requires lambda > 0.
Sym3 equilibrium_stretching(const MaterialModel& model, const Sym3& stress, double lambda);

//! Max |T(t) - T(0)| when integrating the plastic law from T (with k = f(T))
//! under constant D and zero spin for `duration`.
double equilibrium_drift(const MaterialModel& model, const Sym3& stress, const Sym3& d,
                         double duration, const IntegrationOptions& opts = {});

//! equilibrium_drift with D = equilibrium_stretching(T, lambda). Requires
//! |mu(T)| <= 1e-8.
double verify_equilibrium(const MaterialModel& model, const Sym3& stress, double lambda,
                          double duration, const IntegrationOptions& opts = {});

//! Asymptotic ratio |dev D| / |tr D| at the limit surface. Infinite when
//! tr A^-1[B] vanishes (critical state).
class LimitRatio {
 public:
  static LimitRatio infinite() { return LimitRatio{}; }
  static LimitRatio finite(double v) { return LimitRatio{v}; }

  bool is_infinite() const { return !value_; }
  double value() const { return value_.value(); }

 private:
  LimitRatio() = default;
  explicit LimitRatio(double v) : value_(v) {}

  std::optional<double> value_;
};

LimitRatio limit_ratio_rhs(const MaterialModel& model, const Sym3& stress);

//! C1 stress curve on [0, 1].
struct StressPath {
  std::function<Sym3(double)> stress;
  std::function<Sym3(double)> rate;
};

//! T(t) = (s0 + (1 - s0) t) T1. With T1 on the limit surface, s0 < 1 gives a
//! hardening approach and s0 > 1 a softening approach for yield functions
//! positively homogeneous of degree one.
StressPath radial_path(const Sym3& end, double s0);

//! D along a stress path from the plastic law solved for D, with W = 0.
//! Throws OnLimitSurface where |mu| <= 1e-10.
Sym3 stress_driven_stretching(const MaterialModel& model, const StressPath& path, double t);

//! 1 - (D^p : grad f) / (|D^p| |grad f|); zero for exact alignment.
double normality_check(const MaterialModel& model, const Sym3& stress, const Sym3& dp);

//! T' : D^p with D^p = -psi A^-1[B].
double stressing_power(const MaterialModel& model, const Sym3& stress, const Sym3& d,
                       const Sym3& stress_rate);

//! Trapezoidal integral of det F T : D^p over the plastic segments.
double plastic_work(const Trajectory& traj, const MaterialModel& model, const Motion& motion);

//! Point on the limit surface along the ray r * direction (r > 0), found by
//! bisection of mu to |mu| <= 1e-12. `direction` is normalized internally;
//! `offset` is added to every ray point (e.g. a pressure). Returns nullopt
//! when mu has no sign change on (0, r_max].
std::optional<Sym3> locate_limit_point(const MaterialModel& model, const Sym3& direction,
                                       double r_max, const Sym3& offset = {});

struct LimitSurfaceReport {
  struct Ray {
    Sym3 direction;
    std::vector<Sym3> stresses;
    std::vector<double> mu;
    //! Indices i with mu[i], mu[i+1] of opposite sign.
    std::vector<std::size_t> brackets;
    std::optional<Sym3> point;
    std::optional<Sym3> equilibrium_direction;  // -A^-1[B] at the point
  };
  std::vector<Ray> rays;
};

LimitSurfaceReport scan_limit_surface(const MaterialModel& model,
                                      const std::vector<Sym3>& directions, double r_max,
                                      int samples_per_ray);

}  // namespace rtp
