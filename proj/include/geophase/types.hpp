#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>

#include <Eigen/Dense>

namespace geophase {

using Scalar = double;

// One value per tick: orders, drift increments, sampled state columns.
using Sequence = Eigen::ArrayXd;

// Market state: inventory y (shares), quote s (currency/share), cash z (currency).
// Quotes are not floored at zero; long adverse drifts can push s below 0 and the
// engine keeps the additive model exact instead of clamping. Callers that care
// can count offending ticks (see negative_quote_ticks).
struct SystemState {
  Scalar y = 0.0;
  Scalar s = 0.0;
  Scalar z = 0.0;

  [[nodiscard]] bool finite() const {
    return std::isfinite(y) && std::isfinite(s) && std::isfinite(z);
  }
  [[nodiscard]] Eigen::Vector3d vec() const { return {y, s, z}; }
};

// Odd map from signed order size to quote displacement.
//
//   linear(r):           u -> r*u
//   signed_power(r, g):  u -> sign(u) * r * |u|^g
//
// Any other odd callable can be plugged in through custom(). Oddness
// (f(-u) == -f(u)) plus the sign condition (u > 0 => f(u) > 0 when r > 0)
// are what keep the quote neutral over a completed trade cycle; for custom
// functions they are the caller's contract.
class ImpactFunction {
 public:
  static ImpactFunction linear(Scalar r) {
    require(std::isfinite(r) && r >= 0.0,
            "impact: linear coefficient must be finite and >= 0");
    return ImpactFunction(Linear{r});
  }

  static ImpactFunction signed_power(Scalar r, Scalar gamma) {
    require(std::isfinite(r) && r >= 0.0,
            "impact: power coefficient must be finite and >= 0");
    require(std::isfinite(gamma) && gamma > 0.0,
            "impact: power exponent must be finite and > 0");
    return ImpactFunction(SignedPower{r, gamma});
  }

  static ImpactFunction custom(std::function<Scalar(Scalar)> odd_fn) {
    require(static_cast<bool>(odd_fn), "impact: custom function must be callable");
    return ImpactFunction(Custom{std::move(odd_fn)});
  }

  Scalar operator()(Scalar u) const {
    return std::visit([u](const auto& f) { return eval(f, u); }, impl_);
  }

  // Coefficient r when this is the linear family; nullopt otherwise.
  [[nodiscard]] std::optional<Scalar> linear_coefficient() const {
    if (const auto* lin = std::get_if<Linear>(&impl_)) return lin->r;
    return std::nullopt;
  }

 private:
  struct Linear {
    Scalar r;
  };
  struct SignedPower {
    Scalar r;
    Scalar gamma;
  };
  struct Custom {
    std::function<Scalar(Scalar)> fn;
  };

  static Scalar eval(const Linear& f, Scalar u) { return f.r * u; }
  static Scalar eval(const SignedPower& f, Scalar u) {
    if (u == 0.0) return 0.0;
    const Scalar mag = f.r * std::pow(std::abs(u), f.gamma);
    return u > 0.0 ? mag : -mag;
  }
  static Scalar eval(const Custom& f, Scalar u) { return f.fn(u); }

  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  template <typename T>
  explicit ImpactFunction(T impl) : impl_(std::move(impl)) {}

  std::variant<Linear, SignedPower, Custom> impl_;
};

inline Scalar impact_eval(const ImpactFunction& f, Scalar u) { return f(u); }

// Execution price of a signed order against a constant-width book:
// buys lift the ask s + q/2, sells hit the bid s - q/2. A null trade has
// no execution price.
inline Scalar execution_price(Scalar s, Scalar u, Scalar q) {
  if (u == 0.0)
    throw std::invalid_argument("execution_price: no execution price for a null trade (u = 0)");
  return u > 0.0 ? s + q / 2.0 : s - q / 2.0;
}

struct MarketParams {
  ImpactFunction impact = ImpactFunction::linear(0.1);
  Scalar q = 0.0;      // bid-ask spread
  Scalar c = 0.0;      // per-trade fee
  Scalar sigma = 0.0;  // std-dev of the per-tick quote drift
  Scalar s0 = 100.0;   // initial quote

  void validate() const {
    if (!(std::isfinite(q) && q >= 0.0))
      throw std::invalid_argument("market: q must be finite and >= 0");
    if (!(std::isfinite(c) && c >= 0.0))
      throw std::invalid_argument("market: c must be finite and >= 0");
    if (!(std::isfinite(sigma) && sigma >= 0.0))
      throw std::invalid_argument("market: sigma must be finite and >= 0");
    if (!std::isfinite(s0)) throw std::invalid_argument("market: s0 must be finite");
  }
};

// A single aggregated order; ticks are the only event times in the model.
struct TradeOrder {
  std::int64_t tick = 0;
  Scalar u = 0.0;  // signed quantity, nonzero for an actual trade
};

// Dense per-tick input sequence from sparse orders. Ticks must be strictly
// increasing and inside [0, horizon).
Sequence orders_to_input(std::span<const TradeOrder> orders, std::int64_t horizon);

}  // namespace geophase
