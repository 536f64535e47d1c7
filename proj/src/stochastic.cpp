#include "geophase/stochastic.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "geophase/csv.hpp"
#include "geophase/rng.hpp"
#include "geophase/stats.hpp"

namespace geophase {

void ScheduleParams::validate() const {
  // +inf mean_interarrival is the "no arrivals" limit and is allowed.
  if (!(mean_interarrival > 0.0))
    throw std::invalid_argument("schedule: mean_interarrival must be > 0");
  if (!(mean_hold > 0.0)) throw std::invalid_argument("schedule: mean_hold must be > 0");
  if (!(std::isfinite(k) && k > 0.0))
    throw std::invalid_argument("schedule: k must be finite and > 0");
  if (horizon < 0) throw std::invalid_argument("schedule: horizon must be >= 0");
}

Sequence gen_drift(Scalar sigma, std::int64_t horizon, std::uint64_t seed) {
  if (!(std::isfinite(sigma) && sigma >= 0.0))
    throw std::invalid_argument("gen_drift: sigma must be finite and >= 0");
  if (horizon < 0) throw std::invalid_argument("gen_drift: horizon must be >= 0");
  if (sigma == 0.0) return Sequence::Zero(horizon);
  Sequence w(horizon);
  Rng rng(seed);
  for (std::int64_t i = 0; i < horizon; ++i) w[i] = rng.normal(sigma);
  return w;
}

namespace {

// Whole ticks, at least one; saturates instead of overflowing on huge draws.
std::int64_t whole_ticks(double x) {
  if (!(x > 1.0)) return 1;
  if (x >= 9.0e18) return std::numeric_limits<std::int64_t>::max() / 4;
  return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

std::vector<CycleSpec> gen_cycle_schedule(const ScheduleParams& sp, std::uint64_t seed) {
  sp.validate();
  std::vector<CycleSpec> cycles;
  if (!std::isfinite(sp.mean_interarrival)) return cycles;  // arrival rate zero

  Rng rng(seed);
  std::int64_t cursor = 0;  // exit tick of the previous cycle
  for (;;) {
    const std::int64_t gap = whole_ticks(rng.exponential(sp.mean_interarrival));
    if (gap > sp.horizon - cursor) break;
    const std::int64_t t_b = cursor + gap;
    const std::int64_t hold = whole_ticks(rng.exponential(sp.mean_hold));
    if (hold >= sp.horizon - t_b) break;  // exit would reach the horizon: discard
    CycleSpec cyc{t_b, t_b + hold, sp.k, CycleDirection::BuyThenSell};
    if (sp.allow_short && rng.uniform01() < 0.5) cyc.direction = CycleDirection::SellThenBuy;
    cycles.push_back(cyc);
    cursor = cyc.t_s;
  }
  return cycles;
}

RunSummary run_experiment(const ScheduleParams& sp, const MarketParams& params,
                          std::uint64_t seed) {
  params.validate();
  const Sequence drift = gen_drift(params.sigma, sp.horizon, splitmix64_nth(seed, 0));
  const std::vector<CycleSpec> cycles = gen_cycle_schedule(sp, splitmix64_nth(seed, 1));
  const Sequence input = make_cycle_input(cycles, sp.horizon);
  const Trajectory traj = simulate({0.0, params.s0, 0.0}, input, drift, params);

  RunSummary rs;
  rs.z_end = traj.z[traj.z.size() - 1];
  rs.s_end = traj.s[traj.s.size() - 1];
  rs.n_cycles = static_cast<std::int64_t>(cycles.size());
  if (!cycles.empty()) {
    Scalar total = 0.0;
    for (const CycleSpec& cyc : cycles) total += static_cast<Scalar>(cyc.t_s - cyc.t_b);
    rs.mean_duration = total / static_cast<Scalar>(cycles.size());
  }
  rs.cum_drift = traj.w.sum();
  rs.seed = seed;
  return rs;
}

Scalar hold_interval_identity(const Trajectory& traj, const CycleSpec& cycle,
                              const MarketParams& params) {
  cycle.validate();
  traj.validate();
  if (params.q != 0.0 || params.c != 0.0)
    throw std::invalid_argument("hold_interval_identity: requires q = 0 and c = 0");
  const auto n = traj.u.size();
  if (cycle.t_s >= n)
    throw std::invalid_argument("hold_interval_identity: cycle exceeds the trajectory horizon");

  const Scalar dir = cycle.direction == CycleDirection::BuyThenSell ? 1.0 : -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar expected_u =
        i == cycle.t_b ? dir * cycle.k : (i == cycle.t_s ? -dir * cycle.k : 0.0);
    if (traj.u[i] != expected_u)
      throw std::invalid_argument(
          "hold_interval_identity: trajectory input is not exactly this one cycle (tick " +
          std::to_string(i) + ")");
  }

  // Quote gain over the hold window, seen by a position of dir*k shares.
  const Scalar drift_sum = traj.w.segment(cycle.t_b, cycle.t_s - cycle.t_b).sum();
  const Scalar expected = params.impact(cycle.k) * cycle.k + dir * cycle.k * drift_sum;
  return std::abs(phase(traj) - expected);
}

MonteCarloResult monte_carlo(const ScheduleParams& sp, const MarketParams& params,
                             std::int64_t trials, std::uint64_t base_seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  MonteCarloResult result;
  result.runs.resize(trials);
  for (std::int64_t i = 0; i < trials; ++i)
    result.runs[i] = run_experiment(sp, params, trial_seed(base_seed, i));

  Sequence z(trials), ncyc(trials), send(trials), drift(trials);
  std::int64_t profitable = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    const RunSummary& rs = result.runs[i];
    z[i] = rs.z_end;
    ncyc[i] = static_cast<Scalar>(rs.n_cycles);
    send[i] = rs.s_end;
    drift[i] = rs.cum_drift;
    if (rs.z_end > 0.0) ++profitable;
  }
  MonteCarloStats& st = result.stats;
  st.mean_z = mean(z);
  st.std_z = sample_std(z);
  st.corr_z_ncycles = pearson(z, ncyc);
  st.corr_z_send = pearson(z, send);
  st.corr_z_drift = pearson(z, drift);
  st.frac_profitable = static_cast<Scalar>(profitable) / static_cast<Scalar>(trials);
  return result;
}

void write_csv(std::ostream& os, const std::vector<RunSummary>& runs) {
  std::string out = "trial,seed,n_cycles,mean_duration,cum_drift,s_end,z_end\n";
  std::int64_t trial = 0;
  for (const RunSummary& rs : runs) {
    detail::append_number(out, trial++);
    out += ',';
    detail::append_number(out, rs.seed);
    out += ',';
    detail::append_number(out, rs.n_cycles);
    out += ',';
    detail::append_number(out, rs.mean_duration);
    out += ',';
    detail::append_number(out, rs.cum_drift);
    out += ',';
    detail::append_number(out, rs.s_end);
    out += ',';
    detail::append_number(out, rs.z_end);
    out += '\n';
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace geophase
