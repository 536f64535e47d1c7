#pragma once

#include <cmath>
#include <optional>

#include "geophase/types.hpp"

namespace geophase {

inline Scalar mean(const Sequence& v) { return v.size() == 0 ? 0.0 : v.mean(); }

// Sample standard deviation (n-1 denominator); 0 for fewer than two samples.
inline Scalar sample_std(const Sequence& v) {
  const auto n = v.size();
  if (n < 2) return 0.0;
  const Scalar m = v.mean();
  return std::sqrt((v - m).square().sum() / static_cast<Scalar>(n - 1));
}

// Pearson correlation; nullopt when undefined (fewer than two samples or a
// degenerate marginal).
inline std::optional<Scalar> pearson(const Sequence& a, const Sequence& b) {
  const auto n = a.size();
  if (n != b.size() || n < 2) return std::nullopt;
  const Sequence da = a - a.mean();
  const Sequence db = b - b.mean();
  const Scalar saa = da.square().sum();
  const Scalar sbb = db.square().sum();
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return (da * db).sum() / std::sqrt(saa * sbb);
}

// Signed area of the closed polygon (x_i, y_i); the closing edge back to
// (x_0, y_0) is implied. Shoelace form, counterclockwise positive.
inline Scalar signed_polygon_area(const Sequence& x, const Sequence& y) {
  const auto n = x.size() - 1;
  if (n < 1) return 0.0;
  const Scalar wrap = x[n] * y[0] - x[0] * y[n];
  return 0.5 * ((x.head(n) * y.tail(n) - x.tail(n) * y.head(n)).sum() + wrap);
}

}  // namespace geophase
