#include "golodlab/series.hpp"

#include "golodlab/error.hpp"

namespace golodlab {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapError("integer overflow in series arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapError("integer overflow in series arithmetic");
  return r;
}

Coeffs series_truncate(const Coeffs& a, int n) {
  Coeffs out(n + 1, 0);
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) out[i] = a[i];
  return out;
}

Coeffs series_add(const Coeffs& a, const Coeffs& b, int n) {
  Coeffs x = series_truncate(a, n), y = series_truncate(b, n);
  for (int i = 0; i <= n; ++i) x[i] = checked_add(x[i], y[i]);
  return x;
}

Coeffs series_sub(const Coeffs& a, const Coeffs& b, int n) {
  Coeffs x = series_truncate(a, n), y = series_truncate(b, n);
  for (int i = 0; i <= n; ++i) x[i] = checked_add(x[i], checked_mul(-1, y[i]));
  return x;
}

Coeffs series_mul(const Coeffs& a, const Coeffs& b, int n) {
  Coeffs x = series_truncate(a, n), y = series_truncate(b, n), out(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] = checked_add(out[i + j], checked_mul(x[i], y[j]));
  }
  return out;
}

Coeffs series_inverse(const Coeffs& a, int n) {
  Coeffs x = series_truncate(a, n);
  if (x[0] != 1 && x[0] != -1) throw InputError("series is not invertible over the integers (constant term must be 1 or -1)");
  Coeffs out(n + 1, 0);
  out[0] = x[0];
  for (int i = 1; i <= n; ++i) {
    std::int64_t s = 0;
    for (int j = 1; j <= i; ++j) s = checked_add(s, checked_mul(x[j], out[i - j]));
    out[i] = checked_mul(-x[0], s);
  }
  return out;
}

Coeffs series_div(const Coeffs& a, const Coeffs& b, int n) { return series_mul(a, series_inverse(b, n), n); }

Coeffs series_shift(const Coeffs& a, int n) {
  Coeffs out(n + 1, 0);
  for (int i = 1; i <= n && i - 1 < static_cast<int>(a.size()); ++i) out[i] = a[i - 1];
  return out;
}

Coeffs binomial_power(int e) {
  Coeffs out{1};
  for (int k = 0; k < e; ++k) {
    Coeffs next(out.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i] = checked_add(next[i], out[i]);
      next[i + 1] = checked_add(next[i + 1], out[i]);
    }
    out = std::move(next);
  }
  return out;
}

Coeffs poly_trim(Coeffs a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::string format_series(const Coeffs& c, const std::string& var) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t x = c[i];
    if (x == 0) continue;
    std::int64_t mag = x < 0 ? -x : x;
    if (s.empty()) {
      if (x < 0) s += "-";
    } else {
      s += x < 0 ? " - " : " + ";
    }
    if (i == 0 || mag != 1) s += std::to_string(mag);
    if (i >= 1) s += var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

int TruncatedSeries::complete_through() const {
  int k = -1;
  for (std::size_t i = 0; i < complete.size() && complete[i]; ++i) k = static_cast<int>(i);
  return k;
}

std::string format_truncated(const std::string& name, const TruncatedSeries& s) {
  std::string out = name + "(t) = " + format_series(s.coeffs) + " + …";
  int k = s.complete_through();
  if (k < 0) {
    out += " [no complete coefficients]";
  } else {
    out += " [complete through t^" + std::to_string(k) + "]";
  }
  return out;
}

}  // namespace golodlab
