#include "geophase/continuous.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "geophase/csv.hpp"
#include "geophase/stats.hpp"

namespace geophase {

void ContinuousModel::validate() const {
  if (!(std::isfinite(r) && r >= 0.0))
    throw std::invalid_argument("continuous: r must be finite and >= 0");
  if (!(std::isfinite(q) && q >= 0.0))
    throw std::invalid_argument("continuous: q must be finite and >= 0");
  if (!(std::isfinite(tau) && tau >= 0.0))
    throw std::invalid_argument("continuous: tau must be finite and >= 0");
  if (delayed() && tau == 0.0)
    throw std::invalid_argument("continuous: delayed variants need tau > 0");
  if (!delayed() && tau != 0.0)
    throw std::invalid_argument("continuous: tau must be 0 unless the variant is delayed");
}

InputSignal InputSignal::sinusoid(Scalar amplitude, Scalar period, Scalar duration) {
  if (!(std::isfinite(amplitude)))
    throw std::invalid_argument("input: amplitude must be finite");
  if (!(std::isfinite(period) && period > 0.0))
    throw std::invalid_argument("input: period must be finite and > 0");
  if (!(std::isfinite(duration) && duration >= 0.0))
    throw std::invalid_argument("input: duration must be finite and >= 0");
  const Scalar cycles = duration / period;
  if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, cycles))
    throw std::invalid_argument(
        "input: sinusoid duration must be a whole number of periods (duration/period = " +
        detail::number_to_string(cycles) + ")");
  return InputSignal(Sinusoid{amplitude, period}, duration);
}

InputSignal InputSignal::trapezoid_cycle(Scalar k, Scalar ramp, Scalar hold, int repeats) {
  if (!(std::isfinite(k) && k > 0.0)) throw std::invalid_argument("input: k must be finite and > 0");
  if (!(std::isfinite(ramp) && ramp >= 0.0))
    throw std::invalid_argument("input: ramp must be finite and >= 0");
  if (!(std::isfinite(hold) && hold >= 0.0))
    throw std::invalid_argument("input: hold must be finite and >= 0");
  if (ramp + hold <= 0.0) throw std::invalid_argument("input: ramp + hold must be > 0");
  if (repeats < 1) throw std::invalid_argument("input: repeats must be >= 1");
  const Scalar cycle = 2.0 * (2.0 * ramp + hold);
  return InputSignal(TrapezoidCycle{k, ramp, hold}, static_cast<Scalar>(repeats) * cycle);
}

Scalar InputSignal::cycle_length() const {
  if (const auto* sin = std::get_if<Sinusoid>(&shape_)) return sin->period;
  const auto& tz = std::get<TrapezoidCycle>(shape_);
  return 2.0 * (2.0 * tz.ramp + tz.hold);
}

namespace {

// One trapezoid pulse of unit plateau over [0, 2*ramp + hold).
Scalar unit_pulse(Scalar t, Scalar ramp, Scalar hold) {
  if (t < 0.0) return 0.0;
  if (t < ramp) return ramp > 0.0 ? t / ramp : 1.0;
  if (t < ramp + hold) return 1.0;
  if (t < 2.0 * ramp + hold) return (2.0 * ramp + hold - t) / ramp;
  return 0.0;
}

}  // namespace

Scalar InputSignal::value(Scalar t) const {
  if (t < 0.0 || t >= duration_) return 0.0;
  if (const auto* sin = std::get_if<Sinusoid>(&shape_))
    return sin->amplitude * std::sin(2.0 * std::numbers::pi * t / sin->period);
  const auto& tz = std::get<TrapezoidCycle>(shape_);
  const Scalar cycle = 2.0 * (2.0 * tz.ramp + tz.hold);
  const Scalar local = t - cycle * std::floor(t / cycle);
  const Scalar half = cycle / 2.0;
  const Scalar plateau = tz.k / (tz.ramp + tz.hold);
  if (local < half) return plateau * unit_pulse(local, tz.ramp, tz.hold);
  return -plateau * unit_pulse(local - half, tz.ramp, tz.hold);
}

namespace {

std::int64_t grid_steps(Scalar span, Scalar dt, const char* what) {
  const Scalar n_real = span / dt;
  const auto n = static_cast<std::int64_t>(std::llround(n_real));
  if (n < 0 || std::abs(static_cast<Scalar>(n) * dt - span) > 1e-9 * std::max(1.0, std::abs(span)))
    throw std::invalid_argument(std::string(what) + " = " + detail::number_to_string(span) +
                                " is not a whole number of steps of dt = " +
                                detail::number_to_string(dt));
  return n;
}

}  // namespace

ContinuousTrajectory integrate(const ContinuousModel& model, const InputSignal& input,
                               Scalar dt, Scalar T) {
  model.validate();
  if (!(std::isfinite(dt) && dt > 0.0))
    throw std::invalid_argument("integrate: dt must be finite and > 0");
  if (!(std::isfinite(T) && T >= 0.0))
    throw std::invalid_argument("integrate: T must be finite and >= 0");
  const std::int64_t n = grid_steps(T, dt, "integrate: T");
  if (model.delayed()) grid_steps(model.tau, dt, "integrate: tau");

  ContinuousTrajectory traj;
  traj.dt = dt;
  traj.t.resize(n + 1);
  traj.u.resize(n + 1);
  traj.y.resize(n + 1);
  traj.s.resize(n + 1);
  traj.z.resize(n + 1);

  // The delayed term is the shifted input itself (u identically 0 for t < 0),
  // so it is evaluated directly instead of through a sampled history.
  const Scalar tau = model.tau;
  const auto quote_input = [&](Scalar t) { return input.value(t - tau); };

  Eigen::Vector3d x{0.0, 0.0, 0.0};  // (y, s, z)
  for (std::int64_t i = 0; i <= n; ++i) {
    const Scalar t = static_cast<Scalar>(i) * dt;
    traj.t[i] = t;
    traj.u[i] = input.value(t);
    traj.y[i] = x[0];
    traj.s[i] = x[1];
    traj.z[i] = x[2];
    if (i == n) break;

    if (!model.spread()) {
      // Classical 4th-order step.
      const auto f = [&](Scalar tt, const Eigen::Vector3d& xx) -> Eigen::Vector3d {
        const Scalar ut = input.value(tt);
        return {ut, model.r * quote_input(tt), -xx[1] * ut};
      };
      const Eigen::Vector3d k1 = f(t, x);
      const Eigen::Vector3d k2 = f(t + dt / 2.0, x + (dt / 2.0) * k1);
      const Eigen::Vector3d k3 = f(t + dt / 2.0, x + (dt / 2.0) * k2);
      const Eigen::Vector3d k4 = f(t + dt, x + dt * k3);
      x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
      // Explicit first-order step; the cash branch follows the sign of u at
      // the step's start, and u = 0 contributes nothing since z' ~ u.
      const Scalar ut = traj.u[i];
      Scalar zdot = 0.0;
      if (ut > 0.0)
        zdot = -(x[1] + model.q / 2.0) * ut;
      else if (ut < 0.0)
        zdot = -(x[1] - model.q / 2.0) * ut;
      x[2] += dt * zdot;
      x[0] += dt * ut;
      x[1] += dt * model.r * quote_input(t);
    }
    if (!x.allFinite())
      throw std::domain_error("integrate: state became non-finite at t = " +
                              detail::number_to_string(t + dt));
  }
  return traj;
}

StokesCheck stokes_check(const ContinuousTrajectory& traj) {
  const auto n = traj.y.size() - 1;
  if (n < 1) throw std::invalid_argument("stokes_check: empty trajectory");
  const Scalar extent = std::max(traj.y.maxCoeff() - traj.y.minCoeff(),
                                 traj.s.maxCoeff() - traj.s.minCoeff());
  const Scalar gap = std::hypot(traj.y[n] - traj.y[0], traj.s[n] - traj.s[0]);
  if (gap > 1e-6 * extent)
    throw std::invalid_argument("stokes_check: shape path is open (endpoint gap " +
                                detail::number_to_string(gap) + " vs extent " +
                                detail::number_to_string(extent) + ")");

  StokesCheck out;
  out.phase = traj.z[n] - traj.z[0];
  // Trapezoid rule for the closed integral of s dy, closing edge included.
  out.line_integral =
      0.5 * (((traj.s.head(n) + traj.s.tail(n)) * (traj.y.tail(n) - traj.y.head(n))).sum() +
             (traj.s[n] + traj.s[0]) * (traj.y[0] - traj.y[n]));
  out.area = signed_polygon_area(traj.y, traj.s);
  out.residual = std::abs(out.phase + out.line_integral);
  return out;
}

Scalar spread_cycle_loss(const ContinuousModel& model, const InputSignal& input, Scalar dt) {
  if (model.variant != ContinuousVariant::Spread)
    throw std::invalid_argument("spread_cycle_loss: model variant must be Spread");
  if (input.trapezoid() == nullptr)
    throw std::invalid_argument("spread_cycle_loss: input must be a trapezoid cycle");
  const ContinuousTrajectory traj = integrate(model, input, dt, input.duration());
  return traj.z[traj.z.size() - 1] - traj.z[0];
}

Scalar delayed_spread_phase(const ContinuousModel& model, const InputSignal& input, Scalar dt) {
  if (model.variant != ContinuousVariant::DelayedSpread)
    throw std::invalid_argument("delayed_spread_phase: model variant must be DelayedSpread");
  // Pad past the delay tail so the quote settles; z is frozen once u = 0.
  const Scalar span = input.duration() + model.tau;
  const Scalar T = static_cast<Scalar>(std::ceil(span / dt - 1e-9)) * dt;
  const ContinuousTrajectory traj = integrate(model, input, dt, T);
  return traj.z[traj.z.size() - 1] - traj.z[0];
}

void write_csv(std::ostream& os, const ContinuousTrajectory& traj) {
  std::string out = "t,u,y,s,z\n";
  const auto n = traj.t.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    detail::append_number(out, traj.t[i]);
    out += ',';
    detail::append_number(out, traj.u[i]);
    out += ',';
    detail::append_number(out, traj.y[i]);
    out += ',';
    detail::append_number(out, traj.s[i]);
    out += ',';
    detail::append_number(out, traj.z[i]);
    out += '\n';
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace geophase
