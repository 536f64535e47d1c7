#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "geophase/types.hpp"

namespace geophase {

enum class CycleDirection { BuyThenSell, SellThenBuy };

// One round trip: enter a position of k shares at tick t_b, exit at t_s.
struct CycleSpec {
  std::int64_t t_b = 0;
  std::int64_t t_s = 0;
  Scalar k = 1.0;
  CycleDirection direction = CycleDirection::BuyThenSell;

  void validate() const;
};

// Sampled path of the difference equations. States carry one more sample
// than inputs; tick i's state is the pre-trade state seen by order u[i].
struct Trajectory {
  Sequence u;  // orders, one per tick                 (size n)
  Sequence w;  // quote drift increments               (size n)
  Sequence y;  // inventory                            (size n+1)
  Sequence s;  // quote                                (size n+1)
  Sequence z;  // cash                                 (size n+1)

  [[nodiscard]] Eigen::Index horizon() const { return u.size(); }
  [[nodiscard]] SystemState state(Eigen::Index i) const { return {y[i], s[i], z[i]}; }
  [[nodiscard]] SystemState initial() const { return state(0); }
  [[nodiscard]] SystemState final_state() const { return state(y.size() - 1); }

  // Length consistency and finiteness.
  void validate() const;
};

// Advance the market by one tick:
//   y' = y + u
//   s' = s + w + impact(u)
//   z' = z - execution_price(s, u, q) * u - c        (u != 0)
// A null trade is no operation: no impact, no fee, z' = z (the quote still
// takes its drift increment).
SystemState step(const SystemState& x, Scalar u, Scalar w, const MarketParams& p);

// Dense order sequence realizing the given cycles: +k at t_b and -k at t_s
// for BuyThenSell (signs flipped for SellThenBuy), zero elsewhere. Cycles
// must be pairwise non-overlapping in [t_b, t_s] and lie inside the horizon.
Sequence make_cycle_input(std::span<const CycleSpec> cycles, std::int64_t horizon);

// Iterate step() over the input and drift sequences (equal lengths).
Trajectory simulate(const SystemState& initial, const Sequence& inputs, const Sequence& drifts,
                    const MarketParams& p);

// Cash displacement predicted for one completed cycle of k shares:
//   impact(k)*k - q*k - 2c      (rk^2 - qk - 2c in the linear family)
// k = 0 means no trade and no displacement.
Scalar closed_form_phase(Scalar k, const MarketParams& p);

// Net cash displacement over the whole path: z(end) - z(0).
Scalar phase(const Trajectory& traj);

// Signed shoelace area of the closed (y, s) path. The path endpoints must
// agree within tol (absolute, per coordinate); otherwise the endpoint gap is
// reported and the call rejected.
Scalar shape_area(const Trajectory& traj, Scalar tol = 1e-9);

// How many sampled quotes are negative; the additive model has no price
// floor, so surface this instead of clamping.
std::int64_t negative_quote_ticks(const Trajectory& traj);

// CSV with header "tick,u,w,y,s,z", one row per sampled state (the final row
// has u = w = 0: no order is recorded at the horizon tick). LF line endings.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace geophase
