#include "geophase/experiments.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "geophase/continuous.hpp"
#include "geophase/csv.hpp"
#include "geophase/discrete.hpp"
#include "geophase/frontrun.hpp"
#include "geophase/rng.hpp"
#include "geophase/stochastic.hpp"

namespace geophase {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Schemas. The default config doubles as the schema: a key is legal iff it
// exists in the default tree, and its JSON type class must match.
// ---------------------------------------------------------------------------

json impact_defaults() {
  // "gamma" only matters for type = signed_power.
  return json{{"type", "linear"}, {"r", 0.1}, {"gamma", 0.5}};
}

json market_defaults(double q, double c, double sigma) {
  return json{{"impact", impact_defaults()}, {"q", q}, {"c", c}, {"sigma", sigma}, {"s0", 100.0}};
}

json cycle_defaults() {
  return json{{"t_b", 20}, {"t_s", 80}, {"k", 1.0}, {"horizon", 100}, {"repeats", 1}, {"gap", 20}};
}

json schedule_defaults(double mean_interarrival, double mean_hold, std::int64_t horizon) {
  return json{{"mean_interarrival", mean_interarrival}, {"mean_hold", mean_hold},   {"k", 1.0},
              {"horizon", horizon},                     {"allow_short", false}};
}

json input_defaults(const char* type) {
  // Union of both input families; the inactive family's keys are ignored.
  return json{{"type", type}, {"amplitude", 1.0}, {"period", 1.0}, {"duration", 3.0},
              {"k", 1.0},     {"ramp", 0.25},     {"hold", 0.5},   {"repeats", 1}};
}

json continuous_defaults(double r, double tau, double q, double dt, double T, const char* input_type) {
  return json{{"r", r}, {"tau", tau}, {"q", q}, {"dt", dt}, {"T", T},
              {"input", input_defaults(input_type)}};
}

// Paths (section, key) that may hold a list of numbers to sweep over.
using SweepSpec = std::vector<std::pair<std::string, std::string>>;

SweepSpec sweep_spec(const std::string& experiment) {
  if (experiment == "spread") return {{"cycle", "k"}, {"market", "q"}, {"market", "c"}};
  if (experiment.rfind("cont-", 0) == 0)
    return {{"continuous", "r"}, {"continuous", "tau"}, {"continuous", "q"}};
  return {};
}

bool sweepable(const SweepSpec& spec, const std::string& section, const std::string& key) {
  for (const auto& [sec, k] : spec)
    if (sec == section && k == key) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Strict merge of user config over the defaults.
// ---------------------------------------------------------------------------

void assign_checked(json& dst, const json& value, const std::string& path, bool sweep_ok) {
  if (value.is_array()) {
    if (!sweep_ok)
      throw ConfigError("config field '" + path + "' does not accept a list");
    if (value.empty()) throw ConfigError("config field '" + path + "': empty sweep list");
    for (const auto& v : value)
      if (!v.is_number())
        throw ConfigError("config field '" + path + "': sweep entries must be numbers");
    dst = value;
    return;
  }
  if (dst.is_number_integer() && !value.is_number_integer())
    throw ConfigError("config field '" + path + "' expects an integer");
  if (dst.is_number() && !value.is_number())
    throw ConfigError("config field '" + path + "' expects a number");
  if (dst.is_boolean() && !value.is_boolean())
    throw ConfigError("config field '" + path + "' expects a boolean");
  if (dst.is_string() && !value.is_string())
    throw ConfigError("config field '" + path + "' expects a string");
  dst = value;
}

void merge_strict(json& dst, const json& src, const std::string& path, const SweepSpec& sweeps,
                  const std::string& section) {
  if (!src.is_object())
    throw ConfigError("config" + (path.empty() ? std::string() : " field '" + path + "'") +
                      " must be an object");
  for (const auto& [key, value] : src.items()) {
    const std::string child = path.empty() ? key : path + "." + key;
    if (!dst.contains(key)) throw ConfigError("unknown config field '" + child + "'");
    json& slot = dst[key];
    if (slot.is_object())
      merge_strict(slot, value, child, sweeps, key);
    else
      assign_checked(slot, value, child, sweepable(sweeps, section, key));
  }
}

std::pair<std::string, std::string> split_override(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key.path=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

void apply_override(json& resolved, const std::string& kv, const SweepSpec& sweeps) {
  const auto [path, value_str] = split_override(kv);
  json value;
  try {
    value = json::parse(value_str);
  } catch (const json::parse_error&) {
    value = value_str;  // unquoted strings are taken verbatim
  }

  std::vector<std::string> segs;
  std::stringstream ss(path);
  std::string seg;
  while (std::getline(ss, seg, '.')) segs.push_back(seg);
  if (segs.empty()) throw ConfigError("--set: empty key path in '" + kv + "'");

  json* node = &resolved;
  std::string section;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (!node->contains(segs[i]) || !(*node)[segs[i]].is_object())
      throw ConfigError("unknown config field '" + path + "'");
    section = segs[i];
    node = &(*node)[segs[i]];
  }
  const std::string& leaf = segs.back();
  if (!node->contains(leaf) || (*node)[leaf].is_object())
    throw ConfigError("unknown config field '" + path + "'");
  assign_checked((*node)[leaf], value, path, sweepable(sweeps, section, leaf));
}

// ---------------------------------------------------------------------------
// Typed section builders (semantic validation on top of the schema).
// ---------------------------------------------------------------------------

std::uint64_t seed_from(const json& cfg) {
  const json& v = cfg.at("base_seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto i = v.get<std::int64_t>();
  if (i < 0) throw ConfigError("base_seed must be >= 0");
  return static_cast<std::uint64_t>(i);
}

MarketParams market_from(const json& m) {
  MarketParams p;
  const json& imp = m.at("impact");
  const std::string type = imp.at("type").get<std::string>();
  try {
    if (type == "linear")
      p.impact = ImpactFunction::linear(imp.at("r").get<double>());
    else if (type == "signed_power")
      p.impact = ImpactFunction::signed_power(imp.at("r").get<double>(), imp.at("gamma").get<double>());
    else
      throw ConfigError("market.impact.type must be 'linear' or 'signed_power', got '" + type + "'");
    p.q = m.at("q").get<double>();
    p.c = m.at("c").get<double>();
    p.sigma = m.at("sigma").get<double>();
    p.s0 = m.at("s0").get<double>();
    p.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("market: ") + e.what());
  }
  return p;
}

struct CycleSection {
  std::vector<CycleSpec> cycles;
  std::int64_t horizon = 0;
  std::int64_t repeats = 1;
};

CycleSection cycles_from(const json& c, CycleDirection direction) {
  CycleSection out;
  const auto t_b = c.at("t_b").get<std::int64_t>();
  const auto t_s = c.at("t_s").get<std::int64_t>();
  const auto k = c.at("k").get<double>();
  out.horizon = c.at("horizon").get<std::int64_t>();
  out.repeats = c.at("repeats").get<std::int64_t>();
  const auto gap = c.at("gap").get<std::int64_t>();
  if (out.repeats < 1) throw ConfigError("cycle.repeats must be >= 1");
  if (out.repeats > 1 && gap < 1) throw ConfigError("cycle.gap must be >= 1 when repeating");
  try {
    const std::int64_t stride = (t_s - t_b) + gap;
    for (std::int64_t m = 0; m < out.repeats; ++m) {
      CycleSpec cyc{t_b + m * stride, t_s + m * stride, k, direction};
      cyc.validate();
      out.cycles.push_back(cyc);
    }
    make_cycle_input(out.cycles, out.horizon);  // bounds / overlap check
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cycle: ") + e.what());
  }
  return out;
}

ScheduleParams schedule_from(const json& s) {
  ScheduleParams sp;
  sp.mean_interarrival = s.at("mean_interarrival").get<double>();
  sp.mean_hold = s.at("mean_hold").get<double>();
  sp.k = s.at("k").get<double>();
  sp.horizon = s.at("horizon").get<std::int64_t>();
  sp.allow_short = s.at("allow_short").get<bool>();
  try {
    sp.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  return sp;
}

FrontrunSpec frontrun_from(const json& f, std::int64_t& horizon) {
  FrontrunSpec spec;
  spec.k_c = f.at("k_c").get<double>();
  spec.k_h = f.at("k_h").get<double>();
  spec.t_cb = f.at("t_cb").get<std::int64_t>();
  spec.t_cs = f.at("t_cs").get<std::int64_t>();
  spec.tau1 = f.at("tau1").get<std::int64_t>();
  spec.tau2 = f.at("tau2").get<std::int64_t>();
  horizon = f.at("horizon").get<std::int64_t>();
  try {
    spec.validate();
    if (horizon <= spec.t_cs) throw std::invalid_argument("horizon must reach past t_cs");
  } catch (const std::exception& e) {
    throw ConfigError(std::string("frontrun: ") + e.what());
  }
  return spec;
}

ContinuousVariant variant_for(const std::string& experiment) {
  if (experiment == "cont-plain") return ContinuousVariant::Plain;
  if (experiment == "cont-delay") return ContinuousVariant::Delayed;
  if (experiment == "cont-spread") return ContinuousVariant::Spread;
  return ContinuousVariant::DelayedSpread;
}

ContinuousModel model_from(const json& c, ContinuousVariant variant) {
  ContinuousModel model;
  model.r = c.at("r").get<double>();
  model.tau = c.at("tau").get<double>();
  model.q = c.at("q").get<double>();
  model.variant = variant;
  try {
    model.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("continuous: ") + e.what());
  }
  return model;
}

InputSignal input_from(const json& in) {
  const std::string type = in.at("type").get<std::string>();
  try {
    if (type == "sinusoid")
      return InputSignal::sinusoid(in.at("amplitude").get<double>(), in.at("period").get<double>(),
                                   in.at("duration").get<double>());
    if (type == "trapezoid")
      return InputSignal::trapezoid_cycle(in.at("k").get<double>(), in.at("ramp").get<double>(),
                                          in.at("hold").get<double>(),
                                          in.at("repeats").get<int>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("continuous.input: ") + e.what());
  }
  throw ConfigError("continuous.input.type must be 'sinusoid' or 'trapezoid', got '" + type + "'");
}

// ---------------------------------------------------------------------------
// Sweep expansion: every listed field becomes an axis; points are the
// cartesian product in schema order, rightmost axis fastest.
// ---------------------------------------------------------------------------

struct SweepPoint {
  json cfg;                                         // scalarized config
  std::vector<std::pair<std::string, double>> coords;  // (key, value) per axis
};

std::vector<SweepPoint> expand_points(const json& resolved, const SweepSpec& spec) {
  std::vector<std::pair<std::pair<std::string, std::string>, std::vector<double>>> axes;
  for (const auto& [section, key] : spec) {
    if (!resolved.contains(section)) continue;
    const json& node = resolved.at(section).at(key);
    if (node.is_array()) axes.push_back({{section, key}, node.get<std::vector<double>>()});
  }
  std::vector<SweepPoint> points;
  if (axes.empty()) {
    points.push_back({resolved, {}});
    return points;
  }
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    SweepPoint pt{resolved, {}};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& [sk, values] = axes[a];
      pt.cfg[sk.first][sk.second] = values[idx[a]];
      pt.coords.emplace_back(sk.second, values[idx[a]]);
    }
    points.push_back(std::move(pt));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return points;
    }
  }
}

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

void write_text(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open output file " + p.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw ConfigError("failed writing " + p.string());
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json stats_json(const MonteCarloStats& st) {
  json j;
  j["mean_z"] = st.mean_z;
  j["std_z"] = st.std_z;
  j["corr_z_ncycles"] = st.corr_z_ncycles ? json(*st.corr_z_ncycles) : json(nullptr);
  j["corr_z_send"] = st.corr_z_send ? json(*st.corr_z_send) : json(nullptr);
  j["corr_z_drift"] = st.corr_z_drift ? json(*st.corr_z_drift) : json(nullptr);
  j["frac_profitable"] = st.frac_profitable;
  return j;
}

std::string csv_of(const Trajectory& traj) {
  std::ostringstream os;
  write_csv(os, traj);
  return os.str();
}

Scalar mean_duration_of(const std::vector<CycleSpec>& cycles) {
  if (cycles.empty()) return 0.0;
  Scalar total = 0.0;
  for (const CycleSpec& cyc : cycles) total += static_cast<Scalar>(cyc.t_s - cyc.t_b);
  return total / static_cast<Scalar>(cycles.size());
}

// ---------------------------------------------------------------------------
// Experiment bodies. Each returns the stats object (or nothing for sweep
// outputs) and appends the files it wrote.
// ---------------------------------------------------------------------------

struct RunContext {
  const ExperimentConfig& cfg;
  fs::path out;
  std::vector<std::string> files;
  std::int64_t negative_quotes = 0;

  void emit(const std::string& name, const std::string& bytes) {
    write_text(out / name, bytes);
    files.push_back(name);
  }
};

void run_cycle_family(RunContext& ctx, CycleDirection direction) {
  const json& cfg = ctx.cfg.resolved;
  const auto points = expand_points(cfg, sweep_spec(ctx.cfg.experiment));
  const std::uint64_t seed = seed_from(cfg);

  if (points.size() == 1) {
    const MarketParams market = market_from(cfg.at("market"));
    const CycleSection section = cycles_from(cfg.at("cycle"), direction);
    const Sequence drift =
        gen_drift(market.sigma, section.horizon, splitmix64_nth(seed, 0));
    const Sequence input = make_cycle_input(section.cycles, section.horizon);
    const Trajectory traj = simulate({0.0, market.s0, 0.0}, input, drift, market);
    ctx.negative_quotes = negative_quote_ticks(traj);
    ctx.emit("trajectory.csv", csv_of(traj));

    json stats;
    stats["phase"] = phase(traj);
    stats["closed_form_phase"] =
        static_cast<double>(section.repeats) * closed_form_phase(section.cycles.front().k, market);
    stats["n_cycles"] = section.repeats;
    if (market.sigma == 0.0) stats["shape_area"] = shape_area(traj);
    stats["negative_quote_ticks"] = ctx.negative_quotes;
    ctx.emit("stats.json", dump_json(stats));
    return;
  }

  // Sweep: one row per point, k/q/c coordinates plus the measured and
  // predicted phase.
  std::string csv = "k,q,c,phase,closed_form_phase\n";
  for (const SweepPoint& pt : points) {
    const MarketParams market = market_from(pt.cfg.at("market"));
    const CycleSection section = cycles_from(pt.cfg.at("cycle"), direction);
    const Sequence drift =
        gen_drift(market.sigma, section.horizon, splitmix64_nth(seed, 0));
    const Sequence input = make_cycle_input(section.cycles, section.horizon);
    const Trajectory traj = simulate({0.0, market.s0, 0.0}, input, drift, market);
    ctx.negative_quotes += negative_quote_ticks(traj);
    detail::append_number(csv, pt.cfg.at("cycle").at("k").get<double>());
    csv += ',';
    detail::append_number(csv, market.q);
    csv += ',';
    detail::append_number(csv, market.c);
    csv += ',';
    detail::append_number(csv, phase(traj));
    csv += ',';
    detail::append_number(
        csv, static_cast<double>(section.repeats) * closed_form_phase(section.cycles.front().k, market));
    csv += '\n';
  }
  ctx.emit("sweep.csv", csv);
}

void run_drift(RunContext& ctx) {
  const json& cfg = ctx.cfg.resolved;
  const std::uint64_t seed = seed_from(cfg);
  const MarketParams market = market_from(cfg.at("market"));
  const ScheduleParams sp = schedule_from(cfg.at("schedule"));

  const Sequence drift = gen_drift(market.sigma, sp.horizon, splitmix64_nth(seed, 0));
  const std::vector<CycleSpec> cycles = gen_cycle_schedule(sp, splitmix64_nth(seed, 1));
  const Sequence input = make_cycle_input(cycles, sp.horizon);
  const Trajectory traj = simulate({0.0, market.s0, 0.0}, input, drift, market);
  ctx.negative_quotes = negative_quote_ticks(traj);
  ctx.emit("trajectory.csv", csv_of(traj));

  json stats;
  stats["phase"] = phase(traj);
  stats["n_cycles"] = cycles.size();
  stats["mean_duration"] = mean_duration_of(cycles);
  stats["cum_drift"] = traj.w.sum();
  stats["s_end"] = traj.s[traj.s.size() - 1];
  stats["negative_quote_ticks"] = ctx.negative_quotes;
  ctx.emit("stats.json", dump_json(stats));
}

void run_montecarlo(RunContext& ctx) {
  const json& cfg = ctx.cfg.resolved;
  const MarketParams market = market_from(cfg.at("market"));
  const ScheduleParams sp = schedule_from(cfg.at("schedule"));
  const auto trials = cfg.at("trials").get<std::int64_t>();
  if (trials < 1) throw ConfigError("trials must be >= 1");

  const MonteCarloResult result = monte_carlo(sp, market, trials, seed_from(cfg));
  std::ostringstream os;
  write_csv(os, result.runs);
  ctx.emit("runs.csv", os.str());
  ctx.emit("stats.json", dump_json(stats_json(result.stats)));
}

void run_frontrun(RunContext& ctx) {
  const json& cfg = ctx.cfg.resolved;
  const MarketParams market = market_from(cfg.at("market"));
  std::int64_t horizon = 0;
  const FrontrunSpec spec = frontrun_from(cfg.at("frontrun"), horizon);
  const Sequence drift = gen_drift(market.sigma, horizon, splitmix64_nth(seed_from(cfg), 0));
  const TwoTraderTrajectory traj = simulate_two_traders(spec, market, drift, horizon);

  std::ostringstream os;
  write_csv(os, traj);
  ctx.emit("trajectory.csv", os.str());

  const auto n = traj.s.size() - 1;
  json stats;
  stats["dz_c"] = traj.z_c[n] - traj.z_c[0];
  stats["dz_h"] = traj.z_h[n] - traj.z_h[0];
  // The payoff split has a closed form only in the frictionless linear case.
  const auto r = market.impact.linear_coefficient();
  if (r && market.q == 0.0 && market.c == 0.0 && market.sigma == 0.0) {
    const auto [dz_c, dz_h] = closed_form_frontrun(spec.k_c, spec.k_h, *r);
    stats["closed_form_dz_c"] = dz_c;
    stats["closed_form_dz_h"] = dz_h;
  }
  ctx.emit("stats.json", dump_json(stats));
}

void run_continuous(RunContext& ctx) {
  const json& cfg = ctx.cfg.resolved;
  const ContinuousVariant variant = variant_for(ctx.cfg.experiment);
  const auto points = expand_points(cfg, sweep_spec(ctx.cfg.experiment));

  if (points.size() == 1) {
    const json& c = cfg.at("continuous");
    const ContinuousModel model = model_from(c, variant);
    const InputSignal input = input_from(c.at("input"));
    const auto dt = c.at("dt").get<double>();
    const auto T = c.at("T").get<double>();
    const ContinuousTrajectory traj = integrate(model, input, dt, T);
    ctx.emit("trajectory.csv", [&] {
      std::ostringstream os;
      write_csv(os, traj);
      return os.str();
    }());

    json stats;
    const Scalar ph = traj.z[traj.z.size() - 1] - traj.z[0];
    stats["phase"] = ph;
    if (!model.spread()) {
      const StokesCheck sc = stokes_check(traj);
      stats["line_integral"] = sc.line_integral;
      stats["shape_area"] = sc.area;
      stats["stokes_residual"] = sc.residual;
    } else if (model.variant == ContinuousVariant::Spread) {
      if (const auto* tz = input.trapezoid()) stats["expected_phase"] = -model.q * tz->k;
    }
    ctx.emit("stats.json", dump_json(stats));
    return;
  }

  std::string csv = "r,tau,q,phase\n";
  for (const SweepPoint& pt : points) {
    const json& c = pt.cfg.at("continuous");
    const ContinuousModel model = model_from(c, variant);
    const InputSignal input = input_from(c.at("input"));
    const ContinuousTrajectory traj =
        integrate(model, input, c.at("dt").get<double>(), c.at("T").get<double>());
    detail::append_number(csv, model.r);
    csv += ',';
    detail::append_number(csv, model.tau);
    csv += ',';
    detail::append_number(csv, model.q);
    csv += ',';
    detail::append_number(csv, traj.z[traj.z.size() - 1] - traj.z[0]);
    csv += '\n';
  }
  ctx.emit("sweep.csv", csv);
}

void validate_point(const std::string& experiment, const json& cfg) {
  if (experiment == "cycle" || experiment == "sellbuy" || experiment == "spread") {
    market_from(cfg.at("market"));
    cycles_from(cfg.at("cycle"), CycleDirection::BuyThenSell);
  } else if (experiment == "drift") {
    market_from(cfg.at("market"));
    schedule_from(cfg.at("schedule"));
  } else if (experiment == "montecarlo") {
    market_from(cfg.at("market"));
    schedule_from(cfg.at("schedule"));
    if (cfg.at("trials").get<std::int64_t>() < 1) throw ConfigError("trials must be >= 1");
  } else if (experiment == "frontrun") {
    market_from(cfg.at("market"));
    std::int64_t horizon = 0;
    frontrun_from(cfg.at("frontrun"), horizon);
  } else {
    const json& c = cfg.at("continuous");
    model_from(c, variant_for(experiment));
    input_from(c.at("input"));
    const auto dt = c.at("dt").get<double>();
    if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("continuous.dt must be > 0");
    if (!(std::isfinite(c.at("T").get<double>()))) throw ConfigError("continuous.T must be finite");
  }
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "cycle",      "sellbuy",  "drift",       "spread",      "montecarlo",
      "frontrun",   "cont-plain", "cont-delay", "cont-spread", "cont-delayspread"};
  return names;
}

json default_config(const std::string& experiment) {
  json j;
  j["base_seed"] = 42;
  j["output_dir"] = "out";
  if (experiment == "cycle" || experiment == "sellbuy") {
    j["market"] = market_defaults(0.0, 0.0, 0.0);
    j["cycle"] = cycle_defaults();
  } else if (experiment == "spread") {
    j["market"] = market_defaults(0.05, 0.01, 0.0);
    j["cycle"] = cycle_defaults();
  } else if (experiment == "drift") {
    j["market"] = market_defaults(0.0, 0.0, 0.05);
    j["schedule"] = schedule_defaults(150.0, 30.0, 2000);
  } else if (experiment == "montecarlo") {
    j["market"] = market_defaults(0.02, 0.001, 0.01);
    j["schedule"] = schedule_defaults(50.0, 2.0, 20000);
    j["trials"] = 1000;
  } else if (experiment == "frontrun") {
    j["market"] = market_defaults(0.0, 0.0, 0.0);
    j["frontrun"] = json{{"k_c", 1.0}, {"k_h", 1.0}, {"t_cb", 40}, {"t_cs", 80},
                         {"tau1", 5},  {"tau2", 5},  {"horizon", 100}};
  } else if (experiment == "cont-plain") {
    j["continuous"] = continuous_defaults(0.1, 0.0, 0.0, 1e-3, 3.0, "sinusoid");
  } else if (experiment == "cont-delay") {
    j["continuous"] = continuous_defaults(0.1, 0.25, 0.0, 1e-3, 3.25, "sinusoid");
  } else if (experiment == "cont-spread") {
    j["continuous"] = continuous_defaults(0.1, 0.0, 0.2, 1e-4, 2.0, "trapezoid");
  } else if (experiment == "cont-delayspread") {
    j["continuous"] = continuous_defaults(0.5, 0.25, 0.1, 1e-4, 2.25, "trapezoid");
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return j;
}

ExperimentConfig load_config(const std::string& experiment,
                             const std::optional<std::filesystem::path>& config_file,
                             const std::vector<std::string>& set_overrides,
                             const std::optional<std::string>& out_dir) {
  json resolved = default_config(experiment);
  const SweepSpec sweeps = sweep_spec(experiment);

  if (config_file) {
    std::ifstream f(*config_file, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file " + config_file->string());
    json parsed;
    try {
      parsed = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ConfigError("config parse error in " + config_file->string() + ": " + e.what());
    }
    merge_strict(resolved, parsed, "", sweeps, "");
  }
  for (const std::string& kv : set_overrides) apply_override(resolved, kv, sweeps);
  if (out_dir) resolved["output_dir"] = *out_dir;

  ExperimentConfig cfg{experiment, std::move(resolved), set_overrides};
  // Semantic validation of every sweep point, so bad values fail before any
  // file is written.
  for (const SweepPoint& pt : expand_points(cfg.resolved, sweeps))
    validate_point(experiment, pt.cfg);
  seed_from(cfg.resolved);
  return cfg;
}

ExperimentResult run(const ExperimentConfig& cfg) {
  RunContext ctx{cfg, fs::path(cfg.resolved.at("output_dir").get<std::string>()), {}, 0};
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + ctx.out.string());

  try {
    if (cfg.experiment == "cycle")
      run_cycle_family(ctx, CycleDirection::BuyThenSell);
    else if (cfg.experiment == "sellbuy")
      run_cycle_family(ctx, CycleDirection::SellThenBuy);
    else if (cfg.experiment == "spread")
      run_cycle_family(ctx, CycleDirection::BuyThenSell);
    else if (cfg.experiment == "drift")
      run_drift(ctx);
    else if (cfg.experiment == "montecarlo")
      run_montecarlo(ctx);
    else if (cfg.experiment == "frontrun")
      run_frontrun(ctx);
    else
      run_continuous(ctx);
  } catch (const ConfigError&) {
    throw;
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(e.what());
  }

  json meta;
  meta["artifact_version"] = kArtifactVersion;
  meta["experiment"] = cfg.experiment;
  meta["config"] = cfg.resolved;
  meta["overrides"] = cfg.overrides;
  meta["rng_algorithm"] = kRngAlgorithm;
  meta["seed_derivation"] = kSeedDerivation;
  meta["negative_quote_ticks"] = ctx.negative_quotes;
  std::vector<std::string> outputs = ctx.files;
  outputs.push_back("metadata.json");
  meta["outputs"] = outputs;
  ctx.emit("metadata.json", dump_json(meta));

  return {ctx.out, ctx.files, ctx.negative_quotes};
}

}  // namespace geophase
