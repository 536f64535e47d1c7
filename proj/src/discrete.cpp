#include "geophase/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "geophase/csv.hpp"
#include "geophase/stats.hpp"

namespace geophase {

void CycleSpec::validate() const {
  if (t_b < 0 || t_b >= t_s)
    throw std::invalid_argument("cycle: need 0 <= t_b < t_s (got t_b=" + std::to_string(t_b) +
                                ", t_s=" + std::to_string(t_s) + ")");
  if (!(std::isfinite(k) && k > 0.0))
    throw std::invalid_argument("cycle: k must be finite and > 0");
}

void Trajectory::validate() const {
  const auto n = u.size();
  if (w.size() != n || y.size() != n + 1 || s.size() != n + 1 || z.size() != n + 1)
    throw std::invalid_argument("trajectory: inconsistent lengths");
  if (!(u.isFinite().all() && w.isFinite().all() && y.isFinite().all() && s.isFinite().all() &&
        z.isFinite().all()))
    throw std::invalid_argument("trajectory: non-finite sample");
}

SystemState step(const SystemState& x, Scalar u, Scalar w, const MarketParams& p) {
  SystemState next;
  next.y = x.y + u;
  if (u == 0.0) {
    next.s = x.s + w;
    next.z = x.z;  // a null trade is no operation: no impact, no fee
  } else {
    next.s = x.s + w + p.impact(u);
    next.z = x.z - execution_price(x.s, u, p.q) * u - p.c;
  }
  return next;
}

Sequence make_cycle_input(std::span<const CycleSpec> cycles, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("make_cycle_input: horizon must be >= 0");
  std::vector<CycleSpec> sorted(cycles.begin(), cycles.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const CycleSpec& a, const CycleSpec& b) { return a.t_b < b.t_b; });

  Sequence u = Sequence::Zero(horizon);
  std::int64_t prev_end = -1;
  for (const CycleSpec& cyc : sorted) {
    cyc.validate();
    if (cyc.t_s >= horizon)
      throw std::invalid_argument("make_cycle_input: cycle [" + std::to_string(cyc.t_b) + "," +
                                  std::to_string(cyc.t_s) + "] exceeds horizon " +
                                  std::to_string(horizon));
    if (cyc.t_b <= prev_end)
      throw std::invalid_argument("make_cycle_input: cycles overlap at tick " +
                                  std::to_string(cyc.t_b));
    const Scalar enter = cyc.direction == CycleDirection::BuyThenSell ? cyc.k : -cyc.k;
    u[cyc.t_b] = enter;
    u[cyc.t_s] = -enter;
    prev_end = cyc.t_s;
  }
  return u;
}

Trajectory simulate(const SystemState& initial, const Sequence& inputs, const Sequence& drifts,
                    const MarketParams& p) {
  p.validate();
  if (inputs.size() != drifts.size())
    throw std::invalid_argument("simulate: inputs (" + std::to_string(inputs.size()) +
                                ") and drifts (" + std::to_string(drifts.size()) +
                                ") differ in length");
  if (!initial.finite()) throw std::invalid_argument("simulate: non-finite initial state");

  const auto n = inputs.size();
  Trajectory traj;
  traj.u = inputs;
  traj.w = drifts;
  traj.y.resize(n + 1);
  traj.s.resize(n + 1);
  traj.z.resize(n + 1);

  SystemState x = initial;
  traj.y[0] = x.y;
  traj.s[0] = x.s;
  traj.z[0] = x.z;
  for (Eigen::Index i = 0; i < n; ++i) {
    x = step(x, inputs[i], drifts[i], p);
    if (!x.finite())
      throw std::domain_error("simulate: state became non-finite at tick " + std::to_string(i));
    traj.y[i + 1] = x.y;
    traj.s[i + 1] = x.s;
    traj.z[i + 1] = x.z;
  }
  return traj;
}

Scalar closed_form_phase(Scalar k, const MarketParams& p) {
  if (!(std::isfinite(k) && k >= 0.0))
    throw std::invalid_argument("closed_form_phase: k must be finite and >= 0");
  if (k == 0.0) return 0.0;  // no trade, no phase
  return p.impact(k) * k - p.q * k - 2.0 * p.c;
}

Scalar phase(const Trajectory& traj) {
  if (traj.z.size() == 0) throw std::invalid_argument("phase: empty trajectory");
  return traj.z[traj.z.size() - 1] - traj.z[0];
}

Scalar shape_area(const Trajectory& traj, Scalar tol) {
  const auto n = traj.y.size();
  if (n == 0) throw std::invalid_argument("shape_area: empty trajectory");
  const Scalar gap_y = traj.y[n - 1] - traj.y[0];
  const Scalar gap_s = traj.s[n - 1] - traj.s[0];
  if (std::abs(gap_y) > tol || std::abs(gap_s) > tol)
    throw std::invalid_argument("shape_area: path not closed in shape space (endpoint gap dy=" +
                                detail::number_to_string(gap_y) +
                                ", ds=" + detail::number_to_string(gap_s) + ")");
  return signed_polygon_area(traj.y, traj.s);
}

std::int64_t negative_quote_ticks(const Trajectory& traj) {
  return (traj.s < 0.0).count();
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  const auto n = traj.u.size();
  std::string out = "tick,u,w,y,s,z\n";
  for (Eigen::Index i = 0; i <= n; ++i) {
    detail::append_number(out, static_cast<std::int64_t>(i));
    out += ',';
    detail::append_number(out, i < n ? traj.u[i] : 0.0);
    out += ',';
    detail::append_number(out, i < n ? traj.w[i] : 0.0);
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
