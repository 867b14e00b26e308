#include "rtplast/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "rtplast/analysis.hpp"
#include "rtplast/constitutive.hpp"
#include "rtplast/motion.hpp"
#include "rtplast/response.hpp"

namespace rtp {

namespace {

using Relation = Check::Relation;

Check at_most(std::string name, double measured, double threshold) {
  return {std::move(name), Relation::AtMost, measured, threshold, measured <= threshold};
}

Check at_least(std::string name, double measured, double threshold) {
  return {std::move(name), Relation::AtLeast, measured, threshold, measured >= threshold};
}

Check holds(std::string name, bool ok, double measured = 0.0) {
  return {std::move(name), Relation::Holds, measured, 0.0, ok};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Sym3 unit_deviator(const Sym3& s) {
  const Sym3 d = deviator(s);
  return d / norm(d);
}

Mat3 random_matrix(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = n(rng);
  return m;
}

// Deviatoric stretching plus a spin, scaled by `rate`.
Mat3 loading_gradient(const Sym3& direction, double spin, double rate) {
  Mat3 l = rate * unit_deviator(direction).matrix();
  l(0, 1) += spin * rate;
  l(1, 0) -= spin * rate;
  return l;
}

// Hardening run: from zero stress with k0 = 0.5 through an elastic interval,
// yield onset and a plastic interval approaching the limit surface.
struct Run {
  MaterialModel model;
  std::shared_ptr<const Motion> motion;
  Trajectory traj;
};

Run hardening_run(const IntegrationOptions& opts = {}) {
  Run r{default_model(), nullptr, {}};
  r.motion = std::make_shared<ConstantVelocityGradient>(
      loading_gradient(Sym3(1.0, -0.5, -0.5, 0.0, 0.2, 0.1), 0.2, 1.0));
  r.traj = integrate(r.model, *r.motion, {0.0, Sym3{}, 0.5}, 2.0, opts);
  return r;
}

// Softening run: starts on a yield surface outside the limit surface (f = 3).
Run softening_run(const IntegrationOptions& opts = {}) {
  Run r{default_model(), nullptr, {}};
  const Sym3 n = unit_deviator(Sym3(0.3, -0.1, -0.2, 0.4, 0.0, 0.6));
  r.motion = std::make_shared<ConstantVelocityGradient>(loading_gradient(n, 0.2, 1.0));
  r.traj = integrate(r.model, *r.motion, {0.0, 3.0 * n, 3.0}, 2.0, opts);
  return r;
}

// d/dt of k at sample i by the three-point formula on a nonuniform grid
// (one-sided at the ends).
double k_derivative(const std::vector<Sample>& s, std::size_t i) {
  auto three_point = [](double t0, double t1, double t2, double k0, double k1, double k2, double t) {
    const double l0 = ((t - t1) + (t - t2)) / ((t0 - t1) * (t0 - t2));
    const double l1 = ((t - t0) + (t - t2)) / ((t1 - t0) * (t1 - t2));
    const double l2 = ((t - t0) + (t - t1)) / ((t2 - t0) * (t2 - t1));
    return l0 * k0 + l1 * k1 + l2 * k2;
  };
  std::size_t c = std::clamp<std::size_t>(i, 1, s.size() - 2);
  return three_point(s[c - 1].t, s[c].t, s[c + 1].t, s[c - 1].k, s[c].k, s[c + 1].k, s[i].t);
}

// ---------------------------------------------------------------------------

SuiteReport objectivity_suite(std::uint64_t seed) {
  SuiteReport rep{"objectivity", {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_stress = 0.0;
  double worst_k = 0.0;
  int plastic_runs = 0;
  int redrawn = 0;
  for (int i = 0; i < 20; ++i) {
    const MaterialModel model =
        i % 2 == 0 ? default_model() : default_model(YieldKind::DruckerPragerLike, 0.3);
    const Sym3 t0 = random_sym(rng, 0.6);
    const double k0 = model.f(t0) + (i % 3 == 0 ? 0.0 : 0.3 * u(rng));
    std::vector<PiecewiseMotion::Segment> segs;
    segs.push_back({0.5, std::make_shared<ConstantVelocityGradient>(random_matrix(rng, 1.0))});
    segs.push_back({0.5, std::make_shared<ConstantVelocityGradient>(random_matrix(rng, 1.0))});
    auto base = std::make_shared<PiecewiseMotion>(std::move(segs));
    const SuperposedRotation rotated(base, random_unit_vector(rng), 4.0 * u(rng) - 2.0);

    // Draws whose response runs into the singular locus of grad f leave the
    // admissible domain; replace them.
    Trajectory a, b;
    try {
      a = integrate(model, *base, {0.0, t0, k0}, 1.0);
      b = integrate(model, rotated, {0.0, t0, k0}, 1.0);
    } catch (const SingularGradient&) {
      if (++redrawn > 100) break;
      --i;
      continue;
    }
    if (std::any_of(a.segments.begin(), a.segments.end(),
                    [](const Segment& s) { return s.mode == ResponseMode::Plastic; }))
      ++plastic_runs;
    for (int j = 0; j <= 100; ++j) {
      const double t = 0.01 * j;
      const Sym3 expect = rotate(rotated.rotation(t), a.stress_at(t));
      worst_stress = std::max(worst_stress, norm(b.stress_at(t) - expect));
      worst_k = std::max(worst_k, std::abs(b.k_at(t) - a.k_at(t)));
    }
  }
  rep.checks.push_back(at_most("max |T*(t) - Q T(t) Q^T| over 20 scenarios", worst_stress, 1e-6));
  rep.checks.push_back(at_most("max |k*(t) - k(t)| over 20 scenarios", worst_k, 1e-6));
  rep.checks.push_back(at_least("scenarios exercising plastic response", plastic_runs, 5));
  rep.checks.push_back(at_most("draws replaced for reaching the singular locus", redrawn, 20));
  return rep;
}

SuiteReport prop1_suite(std::uint64_t seed) {
  SuiteReport rep{"prop1", {}, {}};
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const IntegrationOptions opts;
  const MaterialModel model = default_model();

  int exclusive = 0;
  int consistent_modes = 0;
  std::map<CaseLabel, int> counts;
  for (int i = 0; i < 1000; ++i) {
    const Sym3 t0 = random_sym(rng, 1.0);
    const double k0 = model.f(t0) + (i % 2 == 0 ? 0.0 : u(rng));
    Sym3 d0 = random_sym(rng, 1.0);
    if (i % 10 == 0) {
      // Put a tenth of the draws exactly on psi = 0.
      const Sym3 p = p_tensor(model, t0);
      d0 -= (inner(d0, p) / inner(p, p)) * p;
    }
    const double gap = k0 - model.f(t0);
    const double ps = psi(model, t0, d0);
    const int truths = int(gap > opts.tol_yield) +
                       int(gap <= opts.tol_yield && ps < -opts.tol_psi) +
                       int(gap <= opts.tol_yield && std::abs(ps) <= opts.tol_psi) +
                       int(gap <= opts.tol_yield && ps > opts.tol_psi);
    const CaseLabel label = classify(model, t0, k0, d0, opts);
    ++counts[label];
    const bool match = (label == CaseLabel::I && gap > opts.tol_yield) ||
                       (label == CaseLabel::II && gap <= opts.tol_yield && ps < -opts.tol_psi) ||
                       (label == CaseLabel::III && gap <= opts.tol_yield && std::abs(ps) <= opts.tol_psi) ||
                       (label == CaseLabel::IV && gap <= opts.tol_yield && ps > opts.tol_psi);
    if (truths == 1 && match) ++exclusive;

    Mat3 l0 = d0.matrix();
    l0 += Skw3::skw(random_matrix(rng, 0.5)).matrix();
    const ConstantVelocityGradient motion(l0);
    const Onset onset = initial_response(model, {0.0, t0, k0}, motion, opts);
    const Onset again = initial_response(model, {0.0, t0, k0}, motion, opts);
    const bool mode_ok = onset.label == label && onset.mode == again.mode &&
                         (label != CaseLabel::I || onset.mode == ResponseMode::Elastic) &&
                         (label != CaseLabel::II || onset.mode == ResponseMode::Elastic) &&
                         (label != CaseLabel::IV || onset.mode == ResponseMode::Plastic);
    if (mode_ok) ++consistent_modes;
  }
  rep.checks.push_back(at_least("draws classified into exactly one case (of 1000)", exclusive, 1000));
  rep.checks.push_back(at_least("draws entering exactly one mode (of 1000)", consistent_modes, 1000));
  for (CaseLabel c : {CaseLabel::I, CaseLabel::II, CaseLabel::III, CaseLabel::IV})
    rep.checks.push_back(at_least(fmt::format("case {} occurrences", to_string(c)), counts[c], 1));

  // Constructed case-III states.
  double worst_rhs = 0.0;
  int single_mode = 0;
  int plastic = 0;
  int elastic = 0;
  constexpr int kCase3 = 200;
  for (int i = 0; i < kCase3; ++i) {
    const Sym3 t0 = random_sym(rng, 1.0);
    const double k0 = model.f(t0);
    const Sym3 p = p_tensor(model, t0);
    Sym3 d0 = random_sym(rng, 1.0);
    d0 -= (inner(d0, p) / inner(p, p)) * p;
    // Every fourth state is under a pure spin, where psi stays zero.
    if (i % 4 == 0) d0 = Sym3{};
    const Skw3 w = Skw3::skw(random_matrix(rng, 0.5));
    worst_rhs = std::max(worst_rhs, norm(rhs(model, ResponseMode::Elastic, t0, d0, w) -
                                         rhs(model, ResponseMode::Plastic, t0, d0, w)));
    const ConstantVelocityGradient probe(d0.matrix() + w.matrix());
    const MaterialState st{0.0, t0, k0};
    if (classify(model, t0, k0, d0, opts) != CaseLabel::III) continue;
    const ResponseMode m1 = resolve_case_iii(model, st, probe, opts);
    const ResponseMode m2 = resolve_case_iii(model, st, probe, opts);
    if (m1 == m2) ++single_mode;
    if (m1 == ResponseMode::Plastic) ++plastic;
    else ++elastic;
  }
  rep.checks.push_back(at_most("case III: max |rhs_elastic - rhs_plastic| at t0", worst_rhs, 1e-12));
  rep.checks.push_back(at_least("case III: states resolved to a single mode (of 200)", single_mode, kCase3));
  rep.checks.push_back(at_least("case III: states resolved as plastic", plastic, 1));
  rep.checks.push_back(at_least("case III: states resolved as elastic", elastic, 1));
  return rep;
}

SuiteReport prop2_suite(std::uint64_t seed) {
  SuiteReport rep{"prop2", {}, {}};
  std::mt19937_64 rng(seed + 2);
  const MaterialModel model = default_model();
  double worst_mu = 0.0;
  double worst_drift = 0.0;
  double least_control = std::numeric_limits<double>::infinity();
  double worst_pair = 0.0;
  double worst_kernel = 0.0;
  int located = 0;
  for (int i = 0; i < 10; ++i) {
    const Sym3 dir = deviator(random_sym(rng, 1.0));
    const auto point = locate_limit_point(model, dir, 10.0);
    if (!point) continue;
    ++located;
    const Sym3 t1 = *point;
    worst_mu = std::max(worst_mu, std::abs(mu(model, t1)));
    for (double lambda : {0.5, 1.0, 2.0}) {
      worst_drift = std::max(worst_drift, verify_equilibrium(model, t1, lambda, 1.0));

      // 1% perturbation orthogonal to the kernel direction.
      const Sym3 d = equilibrium_stretching(model, t1, lambda);
      Sym3 e = deviator(random_sym(rng, 1.0));
      e -= (inner(e, d) / inner(d, d)) * d;
      e = e / norm(e);
      least_control = std::min(least_control,
                               equilibrium_drift(model, t1, d + 0.01 * norm(d) * e, 1.0));
    }
    const Orth3 q = random_rotation(rng);
    const double base = verify_equilibrium(model, t1, 1.0, 1.0);
    const double rotated = equilibrium_drift(
        model, rotate(q, t1), rotate(q, equilibrium_stretching(model, t1, 1.0)), 1.0);
    worst_pair = std::max(worst_pair, std::abs(base - rotated));

    // Off the surface C(T) has a trivial kernel: C[alpha A^-1 B] = alpha mu B != 0.
    const Sym3 inside = 0.5 * t1;
    const Sym3 y = model.a_inv(inside, model.b(inside));
    const double expect = norm(mu(model, inside) * model.b(inside));
    worst_kernel = std::max(worst_kernel, std::abs(norm(c_apply(model, inside, y)) - expect));
  }
  rep.checks.push_back(at_least("limit-surface points located", located, 10));
  rep.checks.push_back(at_most("max |mu| at located points", worst_mu, 1e-12));
  rep.checks.push_back(at_most("max equilibrium drift (lambda in {0.5,1,2}, duration 1)", worst_drift, 1e-7));
  rep.checks.push_back(at_least("min drift of the 1%-perturbed control", least_control, 1e-3));
  rep.checks.push_back(at_most("max drift mismatch for rotated pairs", worst_pair, 1e-9));
  rep.checks.push_back(at_most("off-surface |C[A^-1 B]| - |mu B|", worst_kernel, 1e-12));
  return rep;
}

SuiteReport prop3_suite(std::uint64_t seed) {
  SuiteReport rep{"prop3", {}, {}};
  std::mt19937_64 rng(seed + 3);
  const Sym3 dir = deviator(random_sym(rng, 1.0));

  auto norms_along = [](const MaterialModel& m, const StressPath& path) {
    std::vector<double> out;
    for (int n = 8; n <= 14; ++n) out.push_back(norm(stress_driven_stretching(m, path, 1.0 - std::ldexp(1.0, -n))));
    return out;
  };
  auto monotone = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  auto premise = [](const MaterialModel& m, const StressPath& path, double sign) {
    for (int j = 0; j < 1000; ++j) {
      const double t = j / 1000.0;
      if (!(sign * mu(m, path.stress(t)) > 0.0)) return false;
      if (!(sign * inner(m.grad_f(path.stress(t)), path.rate(t)) > 0.0)) return false;
    }
    return true;
  };

  // Von Mises: critical state, tr A^-1[B] = 0 on S.
  const MaterialModel vm = default_model();
  const Sym3 t1 = *locate_limit_point(vm, dir, 10.0);
  const StressPath hard = radial_path(t1, 0.5);
  const StressPath soft = radial_path(t1, 1.5);
  rep.checks.push_back(holds("von Mises hardening path: mu > 0 and grad f : T' > 0 on [0,1)", premise(vm, hard, 1.0)));
  rep.checks.push_back(holds("von Mises hardening path: |D(1 - 2^-n)| increasing, n = 8..14",
                             monotone(norms_along(vm, hard))));
  rep.checks.push_back(holds("von Mises softening path: mu < 0 and grad f : T' < 0 on [0,1)", premise(vm, soft, -1.0)));
  rep.checks.push_back(holds("von Mises softening path: |D(1 - 2^-n)| increasing, n = 8..14",
                             monotone(norms_along(vm, soft))));
  double trace_fraction = 0.0;
  for (int n = 8; n <= 14; ++n) {
    const Sym3 d = stress_driven_stretching(vm, hard, 1.0 - std::ldexp(1.0, -n));
    trace_fraction = std::max(trace_fraction, std::abs(trace(d)) / norm(d));
  }
  rep.checks.push_back(at_most("von Mises: |tr D| / |D| near S", trace_fraction, 1e-6));
  rep.checks.push_back(holds("von Mises: limit ratio is infinite", limit_ratio_rhs(vm, t1).is_infinite()));

  // Drucker-Prager-like, alpha = 0.3: finite limit ratio.
  const MaterialModel dp = default_model(YieldKind::DruckerPragerLike, 0.3);
  const Sym3 t1dp = *locate_limit_point(dp, dir, 10.0);
  const StressPath hard_dp = radial_path(t1dp, 0.5);
  rep.checks.push_back(holds("DP hardening path: mu > 0 and grad f : T' > 0 on [0,1)", premise(dp, hard_dp, 1.0)));
  rep.checks.push_back(holds("DP hardening path: |D(1 - 2^-n)| increasing, n = 8..14",
                             monotone(norms_along(dp, hard_dp))));
  const LimitRatio expect = limit_ratio_rhs(dp, t1dp);
  const Sym3 d12 = stress_driven_stretching(dp, hard_dp, 1.0 - std::ldexp(1.0, -12));
  const double ratio = norm(deviator(d12)) / std::abs(trace(d12));
  rep.checks.push_back(holds("DP: limit ratio is finite", !expect.is_infinite()));
  rep.checks.push_back(at_most("DP: relative gap of |dev D|/|tr D| at n = 12 to the limit ratio",
                               expect.is_infinite() ? 1.0 : relative(ratio, expect.value()), 0.01));
  return rep;
}

SuiteReport hardening_suite(std::uint64_t) {
  SuiteReport rep{"hardening-rule", {}, {}};
  double worst_eq5 = 0.0;
  double worst_eq10 = 0.0;
  double worst_eq5_eq10 = 0.0;
  double worst_consistency = 0.0;
  double worst_integrated = 0.0;
  int sign_mismatch = 0;
  int plastic_samples = 0;
  double min_mu_hardening = std::numeric_limits<double>::infinity();
  double worst_loading_sign = 0.0;
  bool saw_softening = false;

  auto scan = [&](const Run& r, bool hardening) {
    for (const auto& seg : r.traj.segments) {
      if (seg.mode != ResponseMode::Plastic || seg.samples.size() < 5) continue;
      const auto& s = seg.samples;
      double k_int = s.front().k;
      for (std::size_t i = 0; i < s.size(); ++i) {
        ++plastic_samples;
        const double fd = k_derivative(s, i);
        const double eq5 = s[i].psi * s[i].mu;
        if ((fd > 0.0) != (s[i].mu > 0.0)) ++sign_mismatch;
        worst_consistency = std::max(worst_consistency, std::abs(s[i].k - r.model.f(s[i].stress)));
        if (hardening) min_mu_hardening = std::min(min_mu_hardening, s[i].mu);
        if (!hardening && s[i].mu < 0.0) saw_softening = true;
        // grad f : T' carries the sign of mu whenever psi > 0.
        const double loading = inner(r.model.grad_f(s[i].stress), s[i].stress_rate);
        if ((loading > 0.0) != (s[i].mu > 0.0)) worst_loading_sign = 1.0;

        const StretchingSplit split = decompose_stretching(r.model, s[i].stress, s[i].stress_rate,
                                                           s[i].w, ResponseMode::Plastic);
        const double eq10 = hardening_rate_check(r.model, s[i].stress, split.plastic);
        worst_eq5_eq10 = std::max(worst_eq5_eq10, relative(eq10, eq5));
        // Centered differences only away from the segment ends.
        if (i >= 2 && i + 2 < s.size()) {
          worst_eq5 = std::max(worst_eq5, relative(fd, eq5));
          worst_eq10 = std::max(worst_eq10, relative(fd, eq10));
        }
        // k' = psi mu integrated independently by the trapezoid rule.
        if (i > 0) {
          const double h = s[i].t - s[i - 1].t;
          const double a = s[i - 1].psi * s[i - 1].mu;
          k_int += 0.5 * h * (a + eq5);
          worst_integrated = std::max(worst_integrated, relative(k_int, s[i].k));
        }
      }
    }
  };
  const Run h = hardening_run();
  const Run s = softening_run();
  scan(h, true);
  scan(s, false);

  rep.checks.push_back(at_least("plastic samples examined", plastic_samples, 100));
  rep.checks.push_back(at_most("max relative gap: finite-difference k' vs psi mu", worst_eq5, 1e-6));
  rep.checks.push_back(at_most("max relative gap: finite-difference k' vs |Dp|/|A^-1 B| mu", worst_eq10, 1e-4));
  rep.checks.push_back(at_most("max relative gap: psi mu vs |Dp|/|A^-1 B| mu", worst_eq5_eq10, 1e-10));
  rep.checks.push_back(at_most("max |k - f(T)| on plastic samples", worst_consistency, 1e-10));
  rep.checks.push_back(at_most("max relative gap: integrated psi mu vs k", worst_integrated, 1e-6));
  rep.checks.push_back(at_most("plastic samples with sign(k') != sign(mu)", sign_mismatch, 0));
  rep.checks.push_back(at_most("plastic samples with sign(grad f : T') != sign(mu)", worst_loading_sign, 0));
  rep.checks.push_back(holds("softening scenario reaches mu < 0 samples", saw_softening));
  rep.checks.push_back(at_least("min mu along the hardening plastic path", min_mu_hardening, 1e-300));
  return rep;
}

SuiteReport normality_suite(std::uint64_t) {
  SuiteReport rep{"normality", {}, {}};
  double worst_alignment = 0.0;
  double min_inner = std::numeric_limits<double>::infinity();
  double min_power_hardening = std::numeric_limits<double>::infinity();
  double max_power_softening = -std::numeric_limits<double>::infinity();
  auto scan = [&](const Run& r) {
    for (const auto& seg : r.traj.segments) {
      if (seg.mode != ResponseMode::Plastic) continue;
      for (const auto& s : seg.samples) {
        const Sym3 dp = decompose_stretching(r.model, s.stress, s.stress_rate, s.w,
                                             ResponseMode::Plastic).plastic;
        worst_alignment = std::max(worst_alignment, normality_check(r.model, s.stress, dp));
        min_inner = std::min(min_inner, inner(dp, r.model.grad_f(s.stress)));
        const double power = stressing_power(r.model, s.stress, s.d, s.stress_rate);
        if (s.mu > 0.0) min_power_hardening = std::min(min_power_hardening, power);
        if (s.mu < 0.0) max_power_softening = std::max(max_power_softening, power);
      }
    }
  };
  const Run h = hardening_run();
  const Run s = softening_run();
  scan(h);
  scan(s);
  rep.checks.push_back(at_most("max misalignment of Dp with grad f", worst_alignment, 1e-10));
  rep.checks.push_back(at_least("min Dp : grad f (same side as the outward normal)", min_inner, 1e-300));
  rep.checks.push_back(at_least("min T' : Dp on hardening samples", min_power_hardening, 1e-300));
  rep.checks.push_back(at_most("max T' : Dp on softening samples", max_power_softening, -1e-300));
  const double work = plastic_work(h.traj, h.model, *h.motion);
  rep.checks.push_back(at_least("plastic work on the hardening run", work, 1e-300));
  const double work_fine = plastic_work(hardening_run({.dt_max = 5e-4}).traj, h.model, *h.motion);
  rep.checks.push_back(at_most("plastic work: relative change on halving dt", relative(work, work_fine), 1e-4));
  return rep;
}

SuiteReport perfect_plasticity_suite(std::uint64_t) {
  SuiteReport rep{"perfect-plasticity", {}, {}};
  const MaterialModel model = default_model();
  const double k0 = 2.0;  // (1 - 2 mu_e c0) / (2 mu_e c1) at the defaults
  const Sym3 n = unit_deviator(Sym3(0.0, 0.0, 0.0, 0.0, 0.0, 1.0));
  const ConstantVelocityGradient motion(loading_gradient(Sym3(0.5, -0.5, 0.0, 0.1, 0.0, 0.3), 0.2, 1.0));
  const Trajectory traj = integrate(model, motion, {0.0, k0 * n, k0}, 2.0);
  double worst_f = 0.0;
  double worst_rate = 0.0;
  bool all_plastic = true;
  for (const auto& seg : traj.segments) {
    all_plastic = all_plastic && seg.mode == ResponseMode::Plastic;
    for (const auto& s : seg.samples) {
      worst_f = std::max(worst_f, std::abs(model.f(s.stress) - k0));
      worst_rate = std::max(worst_rate, std::abs(s.k_rate));
    }
  }
  rep.checks.push_back(at_most("initial |mu| (yield surface coincides with S)", std::abs(mu(model, k0 * n)), 1e-12));
  rep.checks.push_back(holds("response plastic throughout", all_plastic));
  rep.checks.push_back(at_most("max |f(T) - k0|", worst_f, 1e-7));
  rep.checks.push_back(at_most("max |k'|", worst_rate, 1e-8));
  return rep;
}

SuiteReport elastic_shear_suite(std::uint64_t) {
  SuiteReport rep{"elastic-shear", {}, {}};
  const MaterialModel model = default_model();
  const double rate = 1.0;
  const double mu_e = 1.0;
  const SimpleShear motion(rate);
  const double t_end = 2.0 * M_PI / rate;
  const Trajectory traj = integrate(model, motion, {0.0, Sym3{}, 100.0}, t_end);
  double worst = 0.0;
  for (const auto& seg : traj.segments) {
    for (const auto& s : seg.samples) {
      const double g = rate * s.t;
      const Sym3 expect(mu_e * (1.0 - std::cos(g)), -mu_e * (1.0 - std::cos(g)), 0.0, 0.0, 0.0,
                        mu_e * std::sin(g));
      for (int c = 0; c < 6; ++c) worst = std::max(worst, std::abs(s.stress[c] - expect[c]));
    }
  }
  rep.checks.push_back(holds("single elastic segment", traj.segments.size() == 1 &&
                                                           traj.segments[0].mode == ResponseMode::Elastic));
  rep.checks.push_back(at_most("max component error vs closed form up to rate t = 2 pi", worst, 1e-6));
  return rep;
}

SuiteReport convergence_suite(std::uint64_t) {
  SuiteReport rep{"convergence", {}, {}};
  const MaterialModel model = default_model();
  const Sym3 n = unit_deviator(Sym3(1.0, -0.3, -0.7, 0.2, 0.5, -0.4));
  const ConstantVelocityGradient motion(loading_gradient(Sym3(0.8, -0.2, -0.6, 0.5, 0.1, 0.3), 0.5, 4.0));
  const MaterialState start{0.0, 1.0 * n, 1.0};
  auto final_stress = [&](double dt, std::size_t* nseg) {
    const Trajectory t = integrate(model, motion, start, 0.5, {.dt_max = dt});
    if (nseg) *nseg = t.segments.size();
    return t.final_state().stress;
  };
  std::size_t segs = 0;
  const Sym3 ref = final_stress(1e-5, &segs);
  const double e1 = norm(final_stress(1e-3, nullptr) - ref);
  const double e2 = norm(final_stress(5e-4, nullptr) - ref);
  rep.checks.push_back(holds("reference run is a single smooth segment", segs == 1));
  rep.checks.push_back(at_least("error(dt = 1e-3) / error(dt = 5e-4)", e1 / e2, 8.0));
  return rep;
}

using SuiteFn = std::function<SuiteReport(std::uint64_t)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"objectivity", objectivity_suite},
      {"prop1", prop1_suite},
      {"prop2", prop2_suite},
      {"prop3", prop3_suite},
      {"hardening-rule", hardening_suite},
      {"normality", normality_suite},
      {"perfect-plasticity", perfect_plasticity_suite},
      {"elastic-shear", elastic_shear_suite},
      {"convergence", convergence_suite},
  };
  return r;
}

SuiteReport guarded(const std::string& name, const SuiteFn& fn, std::uint64_t seed) {
  try {
    return fn(seed);
  } catch (const std::exception& e) {
    return {name, {}, e.what()};
  }
}

}  // namespace

bool SuiteReport::passed() const {
  return error.empty() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed) {
  std::vector<SuiteReport> out;
  for (const auto& [n, fn] : registry())
    if (name == "all" || name == n) out.push_back(guarded(n, fn, seed));
  if (out.empty()) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return out;
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream os;
  os << "[" << (report.passed() ? "PASS" : "FAIL") << "] " << report.suite << "\n";
  if (!report.error.empty()) os << "    error: " << report.error << "\n";
  for (const auto& c : report.checks) {
    os << "    " << (c.passed ? "ok   " : "FAIL ") << c.name;
    switch (c.relation) {
      case Relation::AtMost:
        os << fmt::format(": {:.3e} <= {:.3e}", c.measured, c.threshold);
        break;
      case Relation::AtLeast:
        os << fmt::format(": {:.3e} >= {:.3e}", c.measured, c.threshold);
        break;
      case Relation::Holds:
        break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace rtp
