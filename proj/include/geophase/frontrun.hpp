#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "geophase/types.hpp"

namespace geophase {

// Two traders sharing one quote: a classical trader (c) and a faster one (h)
// that brackets the classical entry.
struct TwoTraderState {
  Scalar y_c = 0.0;
  Scalar y_h = 0.0;
  Scalar s = 0.0;
  Scalar z_c = 0.0;
  Scalar z_h = 0.0;

  [[nodiscard]] bool finite() const {
    return std::isfinite(y_c) && std::isfinite(y_h) && std::isfinite(s) &&
           std::isfinite(z_c) && std::isfinite(z_h);
  }
};

// Event layout: h buys at t_cb - tau1, c buys at t_cb, h sells at t_cb + tau2,
// c sells at t_cs. The four events are strictly ordered, so no tick ever
// carries orders from both traders.
struct FrontrunSpec {
  Scalar k_c = 1.0;  // classical cycle size (>= 0; 0 disables the trader)
  Scalar k_h = 1.0;  // fast cycle size (>= 0)
  std::int64_t t_cb = 40;
  std::int64_t t_cs = 80;
  std::int64_t tau1 = 5;  // fast entry lead
  std::int64_t tau2 = 5;  // fast exit lag after the classical entry

  [[nodiscard]] std::int64_t t_hb() const { return t_cb - tau1; }
  [[nodiscard]] std::int64_t t_hs() const { return t_cb + tau2; }

  void validate() const;
};

struct TwoTraderTrajectory {
  Sequence u_c, u_h;  // per-tick orders                (size n)
  Sequence w;         // drift increments               (size n)
  Sequence y_c, y_h;  // inventories                    (size n+1)
  Sequence s;         // shared quote                   (size n+1)
  Sequence z_c, z_h;  // cash balances                  (size n+1)

  [[nodiscard]] Eigen::Index horizon() const { return u_c.size(); }
};

// Both traders' orders move the shared quote; each cash balance is settled at
// the shared pre-trade quote (plus either half-spread for its own order side).
// drifts must have exactly `horizon` entries; horizon must reach past t_cs.
TwoTraderTrajectory simulate_two_traders(const FrontrunSpec& spec, const MarketParams& params,
                                         const Sequence& drifts, std::int64_t horizon);

// Cash displacement split for the bracketed cycle pair under linear impact r
// with no spread, fees, or drift:
//   dz_c = r * k_c * (k_c - k_h)
//   dz_h = r * k_h * (k_c + k_h)
std::pair<Scalar, Scalar> closed_form_frontrun(Scalar k_c, Scalar k_h, Scalar r);

// CSV with header "tick,u_c,u_h,y_c,y_h,s,z_c,z_h"; final row has null orders.
void write_csv(std::ostream& os, const TwoTraderTrajectory& traj);

}  // namespace geophase
