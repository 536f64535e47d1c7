#include "geophase/frontrun.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "geophase/csv.hpp"

namespace geophase {

void FrontrunSpec::validate() const {
  if (!(std::isfinite(k_c) && k_c >= 0.0 && std::isfinite(k_h) && k_h >= 0.0))
    throw std::invalid_argument("frontrun: cycle sizes must be finite and >= 0");
  if (tau1 <= 0 || tau2 <= 0)
    throw std::invalid_argument("frontrun: tau1 and tau2 must be > 0");
  if (t_hb() < 0)
    throw std::invalid_argument("frontrun: fast entry t_cb - tau1 = " + std::to_string(t_hb()) +
                                " is before tick 0");
  // Strict event order: h buys, c buys, h sells, c sells.
  if (!(t_hb() < t_cb && t_cb < t_hs() && t_hs() < t_cs))
    throw std::invalid_argument("frontrun: event order violated (need t_cb - tau1 < t_cb < "
                                "t_cb + tau2 < t_cs; got t_cs=" +
                                std::to_string(t_cs) + ", t_cb+tau2=" + std::to_string(t_hs()) +
                                ")");
}

TwoTraderTrajectory simulate_two_traders(const FrontrunSpec& spec, const MarketParams& params,
                                         const Sequence& drifts, std::int64_t horizon) {
  spec.validate();
  params.validate();
  if (horizon <= spec.t_cs)
    throw std::invalid_argument("frontrun: horizon must reach past t_cs");
  if (drifts.size() != horizon)
    throw std::invalid_argument("frontrun: drift sequence length " +
                                std::to_string(drifts.size()) + " != horizon " +
                                std::to_string(horizon));

  Sequence u_c = Sequence::Zero(horizon);
  Sequence u_h = Sequence::Zero(horizon);
  if (spec.k_c > 0.0) {
    u_c[spec.t_cb] = spec.k_c;
    u_c[spec.t_cs] = -spec.k_c;
  }
  if (spec.k_h > 0.0) {
    u_h[spec.t_hb()] = spec.k_h;
    u_h[spec.t_hs()] = -spec.k_h;
  }

  TwoTraderTrajectory traj;
  traj.u_c = u_c;
  traj.u_h = u_h;
  traj.w = drifts;
  traj.y_c.resize(horizon + 1);
  traj.y_h.resize(horizon + 1);
  traj.s.resize(horizon + 1);
  traj.z_c.resize(horizon + 1);
  traj.z_h.resize(horizon + 1);

  TwoTraderState x;
  x.s = params.s0;
  traj.y_c[0] = x.y_c;
  traj.y_h[0] = x.y_h;
  traj.s[0] = x.s;
  traj.z_c[0] = x.z_c;
  traj.z_h[0] = x.z_h;

  for (std::int64_t i = 0; i < horizon; ++i) {
    TwoTraderState next = x;
    next.y_c = x.y_c + u_c[i];
    next.y_h = x.y_h + u_h[i];
    // Both balances settle at the shared pre-trade quote; both orders hit it.
    next.s = x.s + drifts[i] + (u_c[i] != 0.0 ? params.impact(u_c[i]) : 0.0) +
             (u_h[i] != 0.0 ? params.impact(u_h[i]) : 0.0);
    if (u_c[i] != 0.0) next.z_c = x.z_c - execution_price(x.s, u_c[i], params.q) * u_c[i] - params.c;
    if (u_h[i] != 0.0) next.z_h = x.z_h - execution_price(x.s, u_h[i], params.q) * u_h[i] - params.c;
    if (!next.finite())
      throw std::domain_error("frontrun: state became non-finite at tick " + std::to_string(i));
    x = next;
    traj.y_c[i + 1] = x.y_c;
    traj.y_h[i + 1] = x.y_h;
    traj.s[i + 1] = x.s;
    traj.z_c[i + 1] = x.z_c;
    traj.z_h[i + 1] = x.z_h;
  }
  return traj;
}

std::pair<Scalar, Scalar> closed_form_frontrun(Scalar k_c, Scalar k_h, Scalar r) {
  if (!(std::isfinite(k_c) && k_c >= 0.0 && std::isfinite(k_h) && k_h >= 0.0))
    throw std::invalid_argument("closed_form_frontrun: cycle sizes must be finite and >= 0");
  if (!(std::isfinite(r) && r >= 0.0))
    throw std::invalid_argument("closed_form_frontrun: r must be finite and >= 0");
  return {r * k_c * (k_c - k_h), r * k_h * (k_c + k_h)};
}

void write_csv(std::ostream& os, const TwoTraderTrajectory& traj) {
  const auto n = traj.u_c.size();
  std::string out = "tick,u_c,u_h,y_c,y_h,s,z_c,z_h\n";
  for (Eigen::Index i = 0; i <= n; ++i) {
    detail::append_number(out, static_cast<std::int64_t>(i));
    out += ',';
    detail::append_number(out, i < n ? traj.u_c[i] : 0.0);
    out += ',';
    detail::append_number(out, i < n ? traj.u_h[i] : 0.0);
    out += ',';
    detail::append_number(out, traj.y_c[i]);
    out += ',';
    detail::append_number(out, traj.y_h[i]);
    out += ',';
    detail::append_number(out, traj.s[i]);
    out += ',';
    detail::append_number(out, traj.z_c[i]);
    out += ',';
    detail::append_number(out, traj.z_h[i]);
    out += '\n';
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace geophase
