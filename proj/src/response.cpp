#include "rtplast/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rtp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double time_eps(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

// One RK4 step of size h from (t, T). The stretching at the segment start is
// the right-hand one; every later stage uses the left-hand value, which is
// what matters when the step ends on a breakpoint.
Sym3 rk4_step(const MaterialModel& model, const Motion& motion, ResponseMode mode,
              const Sym3& stress, double t, double h, double seg_start) {
  auto rate = [&](double ts, const Sym3& s) {
    const Kinematics kin = kinematics(motion, ts, ts == seg_start ? Side::Right : Side::Left);
    return rhs(model, mode, s, kin.d, kin.w);
  };
  const Sym3 k1 = rate(t, stress);
  const Sym3 k2 = rate(t + 0.5 * h, stress + (0.5 * h) * k1);
  const Sym3 k3 = rate(t + 0.5 * h, stress + (0.5 * h) * k2);
  const Sym3 k4 = rate(t + h, stress + h * k3);
  return stress + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Sample make_sample(const MaterialModel& model, const Motion& motion, ResponseMode mode, double t,
                   const Sym3& stress, double k, Side side) {
  Sample s;
  s.t = t;
  s.stress = stress;
  s.k = k;
  const Kinematics kin = kinematics(motion, t, side);
  s.d = kin.d;
  s.w = kin.w;
  if (model.gradient_defined(stress)) {
    s.psi = psi(model, stress, kin.d);
    s.mu = mu(model, stress);
  } else {
    s.psi = kNaN;
    s.mu = kNaN;
  }
  s.stress_rate = rhs(model, mode, stress, kin.d, kin.w);
  s.k_rate = mode == ResponseMode::Plastic ? s.psi * s.mu : 0.0;
  return s;
}

double next_stop(const Motion& motion, double t, double t_end) {
  double stop = t_end;
  for (double b : motion.breakpoints())
    if (b > t + time_eps(t) && b < stop) stop = b;
  return stop;
}

bool is_breakpoint(const Motion& motion, double t) {
  const auto bps = motion.breakpoints();
  return std::any_of(bps.begin(), bps.end(),
                     [&](double b) { return std::abs(b - t) <= time_eps(t); });
}

struct SegmentResult {
  Segment segment;
  MaterialState state;
};

SegmentResult run_segment(const MaterialModel& model, const Motion& motion,
                          const MaterialState& start, double seg_stop, ResponseMode mode,
                          CaseLabel label, const IntegrationOptions& opts) {
  const double seg_start = start.t;
  Segment seg;
  seg.mode = mode;
  seg.entry_case = label;
  seg.samples.push_back(make_sample(model, motion, mode, seg_start, start.stress, start.k,
                                    Side::Right));

  // Positive excess means the event fired: f(T) rising above k while elastic,
  // psi dropping below zero while plastic.
  auto excess = [&](const Sym3& s, double ts, double k) {
    if (mode == ResponseMode::Elastic) return model.f(s) - k;
    return -psi(model, s, kinematics(motion, ts, Side::Left).d);
  };
  const double tol = mode == ResponseMode::Elastic ? opts.tol_yield : opts.tol_psi;

  Sym3 stress = start.stress;
  double k = start.k;
  double t = seg_start;
  long step = 0;
  bool event = false;
  while (!event && seg_stop - t > time_eps(seg_stop)) {
    double t_next = seg_start + static_cast<double>(step + 1) * opts.dt_max;
    if (t_next > seg_stop - time_eps(seg_stop)) t_next = seg_stop;
    const double h = t_next - t;

    Sym3 trial = rk4_step(model, motion, mode, stress, t, h, seg_start);
    double e = excess(trial, t_next, k);
    if (e > tol) {
      double lo = 0.0;
      double hi = h;
      double accepted = 0.0;
      Sym3 accepted_stress = stress;
      bool found = false;
      for (int it = 0; it < opts.event_bisection_iters && !found; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Sym3 s_mid = rk4_step(model, motion, mode, stress, t, mid, seg_start);
        const double e_mid = excess(s_mid, t + mid, k);
        if (e_mid > tol) {
          hi = mid;
        } else {
          accepted = mid;
          accepted_stress = s_mid;
          if (e_mid < -tol) lo = mid;
          else found = true;
        }
      }
      t_next = t + accepted;
      trial = accepted_stress;
      event = true;
      seg.end = mode == ResponseMode::Elastic ? SegmentEnd::YieldOnset : SegmentEnd::Unloading;
      if (accepted == 0.0) break;
    }

    stress = trial;
    t = t_next;
    ++step;
    if (mode == ResponseMode::Plastic) k = model.f(stress);
    if (model.f(stress) - k > opts.tol_yield) {
      std::ostringstream os;
      os << "f(T) - k = " << model.f(stress) - k << " exceeds tol_yield at t = " << t;
      throw AxiomViolated(os.str());
    }
    seg.samples.push_back(make_sample(model, motion, mode, t, stress, k, Side::Left));
    // Plastic flow needs grad f along the whole step. Within one step's worth
    // of stress change of the singular locus the step cannot resolve it.
    if (mode == ResponseMode::Plastic) {
      const double reach = opts.dt_max * norm(seg.samples.back().stress_rate);
      if (!model.yield->is_regular(stress, std::max(reach, model.grad_eps))) {
        std::ostringstream os;
        os << "plastic response reaches the singular locus of grad f near t = " << t
           << " (within " << reach << " of it at dt_max = " << opts.dt_max << ")";
        throw SingularGradient(os.str());
      }
    }
  }
  if (!event) seg.end = is_breakpoint(motion, seg_stop) ? SegmentEnd::Breakpoint : SegmentEnd::EndTime;
  return {std::move(seg), MaterialState{t, stress, k}};
}

Sym3 hermite(const Sample& a, const Sample& b, double t) {
  const double h = b.t - a.t;
  if (h <= 0.0) return a.stress;
  const double s = (t - a.t) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * a.stress + (h10 * h) * a.stress_rate + h01 * b.stress + (h11 * h) * b.stress_rate;
}

double hermite_k(const Sample& a, const Sample& b, double t) {
  const double h = b.t - a.t;
  if (h <= 0.0) return a.k;
  const double s = (t - a.t) / h;
  return (1 + 2 * s) * (1 - s) * (1 - s) * a.k + s * (1 - s) * (1 - s) * h * a.k_rate +
         s * s * (3 - 2 * s) * b.k + s * s * (s - 1) * h * b.k_rate;
}

template <class Fn>
auto interpolate(const Trajectory& traj, double t, Fn&& fn) {
  for (const auto& seg : traj.segments) {
    if (t < seg.t_begin() - time_eps(t) || t > seg.t_end() + time_eps(t)) continue;
    const auto& smp = seg.samples;
    if (smp.size() == 1) return fn(smp.front(), smp.front(), t);
    auto it = std::upper_bound(smp.begin(), smp.end(), t,
                               [](double v, const Sample& s) { return v < s.t; });
    if (it == smp.begin()) ++it;
    if (it == smp.end()) --it;
    return fn(*(it - 1), *it, std::clamp(t, (it - 1)->t, it->t));
  }
  std::ostringstream os;
  os << "time " << t << " outside the integrated interval";
  throw OutOfDomain(os.str());
}

}  // namespace

std::string_view to_string(ResponseMode m) {
  return m == ResponseMode::Elastic ? "elastic" : "plastic";
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I: return "I";
    case CaseLabel::II: return "II";
    case CaseLabel::III: return "III";
    case CaseLabel::IV: return "IV";
  }
  return "?";
}

void IntegrationOptions::validate() const {
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  if (!(tol_yield > 0.0)) throw std::invalid_argument("tol_yield must be positive");
  if (!(tol_psi > 0.0)) throw std::invalid_argument("tol_psi must be positive");
  if (event_bisection_iters < 1) throw std::invalid_argument("event_bisection_iters must be >= 1");
  if (case3_probe_depth < 1) throw std::invalid_argument("case3_probe_depth must be >= 1");
}

MaterialState Trajectory::final_state() const {
  const Sample& s = segments.back().samples.back();
  return {s.t, s.stress, s.k};
}

Sym3 Trajectory::stress_at(double t) const {
  return interpolate(*this, t, [](const Sample& a, const Sample& b, double x) { return hermite(a, b, x); });
}

double Trajectory::k_at(double t) const {
  return interpolate(*this, t, [](const Sample& a, const Sample& b, double x) { return hermite_k(a, b, x); });
}

bool in_elastic_domain(const MaterialModel& model, const Sym3& stress, double k, double tol) {
  return model.f(stress) <= k + tol;
}

CaseLabel classify(const MaterialModel& model, const Sym3& stress, double k, const Sym3& d,
                   const IntegrationOptions& opts) {
  const double gap = k - model.f(stress);
  if (gap < -opts.tol_yield) {
    std::ostringstream os;
    os << "axiom violated: f(T0) exceeds k0 by " << -gap;
    throw AxiomViolated(os.str());
  }
  if (gap > opts.tol_yield) return CaseLabel::I;
  const double p = psi(model, stress, d);
  if (std::abs(p) <= opts.tol_psi) return CaseLabel::III;
  return p < 0.0 ? CaseLabel::II : CaseLabel::IV;
}

ResponseMode resolve_case_iii(const MaterialModel& model, const MaterialState& state,
                              const Motion& motion, const IntegrationOptions& opts) {
  const int depth = opts.case3_probe_depth;
  const double horizon = std::min(next_stop(motion, state.t, motion.t_end()), motion.t_end());
  double h = opts.dt_max;
  if (std::isfinite(horizon)) h = std::min(h, (horizon - state.t) / (depth + 1));
  if (!(h > 0.0)) return ResponseMode::Elastic;

  // psi at t0 + j h along the elastic solution, j = 0..depth.
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(depth) + 1);
  Sym3 stress = state.stress;
  double t = state.t;
  values.push_back(psi(model, stress, kinematics(motion, t, Side::Right).d));
  for (int j = 1; j <= depth; ++j) {
    stress = rk4_step(model, motion, ResponseMode::Elastic, stress, t, h, state.t);
    t = state.t + j * h;
    values.push_back(psi(model, stress, kinematics(motion, t, Side::Left).d));
  }

  // n-th forward difference at t0 for n = 1..depth.
  for (int n = 1; n <= depth; ++n) {
    double diff = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
      const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
      diff += sign * binom * values[static_cast<std::size_t>(j)];
      binom = binom * (n - j) / (j + 1);
    }
    if (std::abs(diff) > opts.tol_psi) return diff > 0.0 ? ResponseMode::Plastic : ResponseMode::Elastic;
  }
  return ResponseMode::Elastic;
}

Onset initial_response(const MaterialModel& model, const MaterialState& state,
                       const Motion& motion, const IntegrationOptions& opts) {
  const Kinematics kin = kinematics(motion, state.t, Side::Right);
  const CaseLabel label = classify(model, state.stress, state.k, kin.d, opts);
  switch (label) {
    case CaseLabel::I:
    case CaseLabel::II:
      return {label, ResponseMode::Elastic};
    case CaseLabel::III:
      return {label, resolve_case_iii(model, state, motion, opts)};
    case CaseLabel::IV:
      break;
  }
  return {label, ResponseMode::Plastic};
}

Sym3 rhs(const MaterialModel& model, ResponseMode mode, const Sym3& stress, const Sym3& d,
         const Skw3& w) {
  const Sym3 h = mode == ResponseMode::Elastic ? model.a(stress, d) : c_apply(model, stress, d);
  return jaumann_to_material(h, stress, w);
}

Trajectory integrate(const MaterialModel& model, const Motion& motion, const MaterialState& state0,
                     double t_end, const IntegrationOptions& opts) {
  opts.validate();
  if (!(t_end > state0.t)) throw std::invalid_argument("integrate: t_end must exceed state0.t");
  if (state0.t < motion.t_begin() - time_eps(state0.t) || t_end > motion.t_end() + time_eps(t_end))
    throw OutOfDomain("integrate: requested interval exceeds the motion's domain");
  if (!in_elastic_domain(model, state0.stress, state0.k, opts.tol_yield))
    throw AxiomViolated("integrate: initial state lies outside the elastic domain");

  Trajectory traj;
  MaterialState state = state0;
  int stalled = 0;
  while (t_end - state.t > time_eps(t_end)) {
    const double stop = next_stop(motion, state.t, t_end);
    const Onset onset = initial_response(model, state, motion, opts);
    SegmentResult r = run_segment(model, motion, state, stop, onset.mode, onset.label, opts);
    if (r.segment.samples.size() == 1) {
      if (++stalled > 4)
        throw StepSizeUnderflow("integrate: repeated zero-length segments at t = " +
                                std::to_string(state.t));
    } else {
      stalled = 0;
    }
    state = r.state;
    traj.segments.push_back(std::move(r.segment));
  }
  return traj;
}

}  // namespace rtp
