#pragma once

#include <iosfwd>
#include <variant>

#include "geophase/types.hpp"

namespace geophase {

enum class ContinuousVariant { Plain, Delayed, Spread, DelayedSpread };

// Continuous-time counterpart of the tick model:
//   y' = u(t)
//   s' = r * u(t - tau)            (tau = 0 for the undelayed variants)
//   z' = -s * u                    (smooth variants)
//   z' = -(s + q/2) u  if u > 0    (spread variants; -(s - q/2) u if u < 0,
//                                   0 at u = 0 since z' is proportional to u)
struct ContinuousModel {
  Scalar r = 0.1;
  Scalar tau = 0.0;
  Scalar q = 0.0;
  ContinuousVariant variant = ContinuousVariant::Plain;

  [[nodiscard]] bool delayed() const {
    return variant == ContinuousVariant::Delayed || variant == ContinuousVariant::DelayedSpread;
  }
  [[nodiscard]] bool spread() const {
    return variant == ContinuousVariant::Spread || variant == ContinuousVariant::DelayedSpread;
  }

  void validate() const;
};

// Cyclic input signal, zero outside [0, duration).
//
//   sinusoid(A, P):          A sin(2 pi t / P); duration a whole number of periods
//   trapezoid_cycle(k,...):  a +k trapezoid pulse then a -k mirror pulse,
//                            plateau k/(ramp+hold), cycle length 2*(2*ramp+hold)
//
// Both integrate to zero over one cycle, so the driven (y, s) path closes.
class InputSignal {
 public:
  struct Sinusoid {
    Scalar amplitude;
    Scalar period;
  };
  struct TrapezoidCycle {
    Scalar k;
    Scalar ramp;
    Scalar hold;
  };

  static InputSignal sinusoid(Scalar amplitude, Scalar period, Scalar duration);
  static InputSignal trapezoid_cycle(Scalar k, Scalar ramp, Scalar hold, int repeats = 1);

  [[nodiscard]] Scalar value(Scalar t) const;
  [[nodiscard]] Scalar duration() const { return duration_; }
  // Length of one cycle of the underlying pattern.
  [[nodiscard]] Scalar cycle_length() const;
  [[nodiscard]] const TrapezoidCycle* trapezoid() const {
    return std::get_if<TrapezoidCycle>(&shape_);
  }

 private:
  InputSignal(std::variant<Sinusoid, TrapezoidCycle> shape, Scalar duration)
      : shape_(std::move(shape)), duration_(duration) {}

  std::variant<Sinusoid, TrapezoidCycle> shape_;
  Scalar duration_;
};

// Uniformly sampled solution; u is the input sampled on the same grid.
struct ContinuousTrajectory {
  Scalar dt = 0.0;
  Sequence t, u, y, s, z;  // all of size n+1

  [[nodiscard]] Eigen::Index steps() const { return t.size() - 1; }
};

// Fixed-step integration from (y, s, z) = (0, 0, 0) over [0, T].
//
// Smooth variants use the classical 4th-order scheme. Spread variants use
// explicit first-order steps with the cash branch chosen by the sign of u at
// the step's start (the spread dynamics are discontinuous, so higher order
// buys nothing). The delayed input is the shifted signal itself with u = 0
// for t < 0; tau must be a whole number of steps, as must T.
ContinuousTrajectory integrate(const ContinuousModel& model, const InputSignal& input,
                               Scalar dt, Scalar T);

// Phase / line-integral / area report for a closed shape path.
//
// For the smooth variants z' = -s u implies
//   phase = z(T) - z(0) = -closed integral of s dy,
// so residual = |phase + line_integral|. The shoelace area of the (y, s)
// polygon equals -line_integral for closed paths and is reported as an
// independent quadrature of the same geometric quantity.
struct StokesCheck {
  Scalar phase = 0.0;
  Scalar line_integral = 0.0;  // closed trapezoid integral of s dy
  Scalar area = 0.0;           // shoelace area of the (y, s) polygon
  Scalar residual = 0.0;       // |phase + line_integral|
};

// Rejects open paths: endpoints must agree within 1e-6 of the path extent.
StokesCheck stokes_check(const ContinuousTrajectory& traj);

// One trapezoid cycle under the Spread model: returns z(T) - z(0), which
// tends to -q*k as dt -> 0 (first order).
Scalar spread_cycle_loss(const ContinuousModel& model, const InputSignal& input,
                         Scalar dt = 1e-4);

// DelayedSpread phase over the input duration plus the delay tail; the sign
// depends on (r, tau, q) and is the caller's to sweep.
Scalar delayed_spread_phase(const ContinuousModel& model, const InputSignal& input,
                            Scalar dt = 1e-4);

// CSV with header "t,u,y,s,z". LF line endings.
void write_csv(std::ostream& os, const ContinuousTrajectory& traj);

}  // namespace geophase
