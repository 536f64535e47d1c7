#include <string>

#include "geophase/types.hpp"

namespace geophase {

Sequence orders_to_input(std::span<const TradeOrder> orders, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("orders_to_input: horizon must be >= 0");
  Sequence u = Sequence::Zero(horizon);
  std::int64_t prev = -1;
  for (const TradeOrder& o : orders) {
    if (o.tick <= prev)
      throw std::invalid_argument("orders_to_input: ticks must be strictly increasing (tick " +
                                  std::to_string(o.tick) + " after " + std::to_string(prev) + ")");
    if (o.tick < 0 || o.tick >= horizon)
      throw std::invalid_argument("orders_to_input: tick " + std::to_string(o.tick) +
                                  " outside horizon " + std::to_string(horizon));
    if (!std::isfinite(o.u)) throw std::invalid_argument("orders_to_input: non-finite quantity");
    u[o.tick] = o.u;
    prev = o.tick;
  }
  return u;
}

}  // namespace geophase
