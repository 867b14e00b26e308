#include "rtplast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtp {

namespace {

void require_off_limit_surface(double m) {
  if (!(std::abs(m) > kLimitSurfaceTol)) {
    std::ostringstream os;
    os << "mu(T) = " << m << " is within " << kLimitSurfaceTol << " of the limit surface";
    throw OnLimitSurface(os.str());
  }
}

}  // namespace

StretchingSplit decompose_stretching(const MaterialModel& model, const Sym3& stress,
                                     const Sym3& stress_rate, const Skw3& w, ResponseMode mode) {
  // T° = T' - W T + T W, i.e. the inverse of jaumann_to_material with -W.
  const Sym3 jaumann = jaumann_to_material(stress_rate, stress, -1.0 * w);
  StretchingSplit out;
  out.elastic = model.a_inv(stress, jaumann);
  if (mode == ResponseMode::Plastic) {
    const double m = mu(model, stress);
    require_off_limit_surface(m);
    const double z = inner(model.grad_f(stress), stress_rate);
    out.plastic = -(z / m) * model.a_inv(stress, model.b(stress));
  }
  return out;
}

Sym3 plastic_stretching(const MaterialModel& model, const Sym3& stress, const Sym3& d) {
  return -psi(model, stress, d) * model.a_inv(stress, model.b(stress));
}

double hardening_rate_check(const MaterialModel& model, const Sym3& stress, const Sym3& dp) {
  const double n = norm(dp);
  if (n == 0.0) return 0.0;
  return n / norm(model.a_inv(stress, model.b(stress))) * mu(model, stress);
}

Sym3 equilibrium_stretching(const MaterialModel& model, const Sym3& stress, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("equilibrium_stretching: lambda must be positive");
  return -lambda * model.a_inv(stress, model.b(stress));
}

double equilibrium_drift(const MaterialModel& model, const Sym3& stress, const Sym3& d,
                         double duration, const IntegrationOptions& opts) {
  const ConstantVelocityGradient motion(d.matrix());
  const MaterialState start{0.0, stress, model.f(stress)};
  const Trajectory traj = integrate(model, motion, start, duration, opts);
  double drift = 0.0;
  for (const auto& seg : traj.segments)
    for (const auto& s : seg.samples) drift = std::max(drift, norm(s.stress - stress));
  return drift;
}

double verify_equilibrium(const MaterialModel& model, const Sym3& stress, double lambda,
                          double duration, const IntegrationOptions& opts) {
  const double m = mu(model, stress);
  if (std::abs(m) > 1e-8) {
    std::ostringstream os;
    os << "verify_equilibrium: stress is not on the limit surface (mu = " << m << ")";
    throw std::invalid_argument(os.str());
  }
  return equilibrium_drift(model, stress, equilibrium_stretching(model, stress, lambda), duration,
                           opts);
}

LimitRatio limit_ratio_rhs(const MaterialModel& model, const Sym3& stress) {
  const Sym3 x = model.a_inv(stress, model.b(stress));
  const double tr = trace(x);
  if (std::abs(tr) <= 1e-12) return LimitRatio::infinite();
  const double n = norm(x);
  return LimitRatio::finite(std::sqrt(std::max(0.0, n * n / (tr * tr) - 1.0 / 3.0)));
}

StressPath radial_path(const Sym3& end, double s0) {
  return {
      [end, s0](double t) { return (s0 + (1.0 - s0) * t) * end; },
      [end, s0](double) { return (1.0 - s0) * end; },
  };
}

Sym3 stress_driven_stretching(const MaterialModel& model, const StressPath& path, double t) {
  const Sym3 stress = path.stress(t);
  const Sym3 rate = path.rate(t);
  const double m = mu(model, stress);
  require_off_limit_surface(m);
  const double z = inner(model.grad_f(stress), rate);
  return model.a_inv(stress, rate) - (z / m) * model.a_inv(stress, model.b(stress));
}

double normality_check(const MaterialModel& model, const Sym3& stress, const Sym3& dp) {
  const Sym3 g = model.grad_f(stress);
  return 1.0 - inner(dp, g) / (norm(dp) * norm(g));
}

double stressing_power(const MaterialModel& model, const Sym3& stress, const Sym3& d,
                       const Sym3& stress_rate) {
  return inner(stress_rate, plastic_stretching(model, stress, d));
}

double plastic_work(const Trajectory& traj, const MaterialModel& model, const Motion& motion) {
  double work = 0.0;
  for (const auto& seg : traj.segments) {
    if (seg.mode != ResponseMode::Plastic) continue;
    double prev_t = 0.0;
    double prev_v = 0.0;
    bool first = true;
    for (const auto& s : seg.samples) {
      const Side side = first ? Side::Right : Side::Left;
      const double v = motion.F(s.t, side).determinant() *
                       inner(s.stress, plastic_stretching(model, s.stress, s.d));
      if (!first) work += 0.5 * (s.t - prev_t) * (v + prev_v);
      prev_t = s.t;
      prev_v = v;
      first = false;
    }
  }
  return work;
}

std::optional<Sym3> locate_limit_point(const MaterialModel& model, const Sym3& direction,
                                       double r_max, const Sym3& offset) {
  const Sym3 n = direction / norm(direction);
  auto mu_at = [&](double r) { return mu(model, offset + r * n); };

  // Coarse scan for the first sign change, then bisection.
  constexpr int kScan = 64;
  double lo = r_max / kScan;
  double mu_lo = mu_at(lo);
  double hi = lo;
  bool bracketed = false;
  for (int i = 2; i <= kScan; ++i) {
    hi = r_max * i / kScan;
    const double mu_hi = mu_at(hi);
    if ((mu_lo > 0.0) != (mu_hi > 0.0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    mu_lo = mu_hi;
  }
  if (!bracketed) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = mu_at(mid);
    if (std::abs(m) <= 1e-12) return offset + mid * n;
    if ((m > 0.0) == (mu_lo > 0.0)) {
      lo = mid;
      mu_lo = m;
    } else {
      hi = mid;
    }
  }
  const double r = 0.5 * (lo + hi);
  if (std::abs(mu_at(r)) <= 1e-12) return offset + r * n;
  return std::nullopt;
}

LimitSurfaceReport scan_limit_surface(const MaterialModel& model,
                                      const std::vector<Sym3>& directions, double r_max,
                                      int samples_per_ray) {
  if (samples_per_ray < 2) throw std::invalid_argument("scan_limit_surface: need >= 2 samples per ray");
  LimitSurfaceReport report;
  for (const Sym3& dir : directions) {
    LimitSurfaceReport::Ray ray;
    ray.direction = dir / norm(dir);
    for (int i = 1; i <= samples_per_ray; ++i) {
      const Sym3 s = (r_max * i / samples_per_ray) * ray.direction;
      ray.stresses.push_back(s);
      ray.mu.push_back(mu(model, s));
    }
    for (std::size_t i = 0; i + 1 < ray.mu.size(); ++i)
      if ((ray.mu[i] > 0.0) != (ray.mu[i + 1] > 0.0)) ray.brackets.push_back(i);
    ray.point = locate_limit_point(model, ray.direction, r_max);
    if (ray.point) ray.equilibrium_direction = equilibrium_stretching(model, *ray.point, 1.0);
    report.rays.push_back(std::move(ray));
  }
  return report;
}

}  // namespace rtp
