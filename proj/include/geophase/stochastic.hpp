#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "geophase/discrete.hpp"
#include "geophase/types.hpp"

namespace geophase {

// Parameters of the randomized cycle schedule: cycle starts arrive with
// exponential inter-arrival times (mean mean_interarrival), holds are
// exponential with mean mean_hold; both are rounded up to whole ticks >= 1.
struct ScheduleParams {
  Scalar mean_interarrival = 100.0;  // ticks between the end of one cycle and the next start
  Scalar mean_hold = 10.0;           // mean of t_s - t_b
  Scalar k = 1.0;                    // shares per cycle
  std::int64_t horizon = 10000;      // total ticks
  bool allow_short = false;          // include SellThenBuy cycles

  void validate() const;
};

// Endpoint summary of one seeded run.
struct RunSummary {
  Scalar z_end = 0.0;
  Scalar s_end = 0.0;
  std::int64_t n_cycles = 0;
  Scalar mean_duration = 0.0;  // mean t_s - t_b over realized cycles, 0 when none
  Scalar cum_drift = 0.0;      // sum of w over the horizon
  std::uint64_t seed = 0;
};

// horizon i.i.d. N(0, sigma^2) draws; all zeros when sigma == 0 (no RNG
// consumed). Deterministic given seed.
Sequence gen_drift(Scalar sigma, std::int64_t horizon, std::uint64_t seed);

// Randomized non-overlapping cycle schedule. Per cycle the draw order is
// gap, hold, then (only when allow_short) a direction coin; a cycle whose
// exit would reach past the horizon is discarded and generation stops.
// An infinite mean_interarrival means no arrivals at all.
std::vector<CycleSpec> gen_cycle_schedule(const ScheduleParams& sp, std::uint64_t seed);

// Drift + schedule + cycle input + simulation, reduced to an endpoint
// summary. Substream seeds are derived per kSeedDerivation. Initial state is
// (y, s, z) = (0, s0, 0).
RunSummary run_experiment(const ScheduleParams& sp, const MarketParams& params,
                          std::uint64_t seed);

// Residual of the single-cycle cash identity under drift, with q = c = 0:
//
//   z(end) - z(0) = impact(k)*k + dir * k * sum_{i in [t_b, t_s)} w(i)
//
// (dir = +1 buy-then-sell, -1 sell-then-buy). The drift window is half-open:
// an increment landing on the exit tick moves the quote only after the exit
// order has executed, so it cannot enter the cycle's cash flow. The
// trajectory must have been produced with exactly this one cycle.
Scalar hold_interval_identity(const Trajectory& traj, const CycleSpec& cycle,
                              const MarketParams& params);

struct MonteCarloStats {
  Scalar mean_z = 0.0;
  Scalar std_z = 0.0;  // sample std, 0 for a single trial
  std::optional<Scalar> corr_z_ncycles;
  std::optional<Scalar> corr_z_send;
  std::optional<Scalar> corr_z_drift;
  Scalar frac_profitable = 0.0;  // fraction of trials with z_end > 0
};

struct MonteCarloResult {
  std::vector<RunSummary> runs;  // ordered by trial index
  MonteCarloStats stats;
};

// trials independent runs with seeds trial_seed(base_seed, i); aggregation is
// a pure function of the index-ordered summaries, so execution order cannot
// change the result.
MonteCarloResult monte_carlo(const ScheduleParams& sp, const MarketParams& params,
                             std::int64_t trials, std::uint64_t base_seed);

// CSV with header "trial,seed,n_cycles,mean_duration,cum_drift,s_end,z_end".
void write_csv(std::ostream& os, const std::vector<RunSummary>& runs);

}  // namespace geophase
