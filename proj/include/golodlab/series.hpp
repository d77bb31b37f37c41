#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace golodlab {

/// Integer coefficients c_0, c_1, ... of a power series or polynomial in t.
using Coeffs = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// All operations return exactly n + 1 coefficients (truncation mod t^{n+1}).
Coeffs series_truncate(const Coeffs& a, int n);
Coeffs series_add(const Coeffs& a, const Coeffs& b, int n);
Coeffs series_sub(const Coeffs& a, const Coeffs& b, int n);
Coeffs series_mul(const Coeffs& a, const Coeffs& b, int n);
/// Requires a_0 = ±1.
Coeffs series_inverse(const Coeffs& a, int n);
Coeffs series_div(const Coeffs& a, const Coeffs& b, int n);
/// t * a
Coeffs series_shift(const Coeffs& a, int n);
Coeffs binomial_power(int e);  // (1 + t)^e

/// Drops trailing zeros.
Coeffs poly_trim(Coeffs a);

/// "1 + 2t + 4t^2"
std::string format_series(const Coeffs& c, const std::string& var = "t");

/// Coefficients with a per-coefficient completeness flag (false: lower bound only).
struct TruncatedSeries {
  Coeffs coeffs;
  std::vector<bool> complete;

  /// Largest i with c_0..c_i all complete, or -1.
  int complete_through() const;
  bool all_complete() const { return complete_through() + 1 == static_cast<int>(coeffs.size()); }
};

/// "P(t) = 1 + 2t + 4t^2 + … [complete through t^4]"
std::string format_truncated(const std::string& name, const TruncatedSeries& s);

}  // namespace golodlab
