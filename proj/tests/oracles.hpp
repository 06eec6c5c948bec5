#pragma once

// Test-only brute-force oracles. Nothing here touches the library's tables
// or fast paths: every value comes straight from the definitions.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline std::int64_t mod(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

inline cplx e(std::int64_t z, std::int64_t q) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(z, q)) / static_cast<double>(q));
}

inline std::vector<std::int64_t> units(std::int64_t q) {
  std::vector<std::int64_t> u;
  for (std::int64_t x = 1; x < q; ++x)
    if (std::gcd(x, q) == 1) u.push_back(x);
  return u;
}

inline std::int64_t inverse(std::int64_t x, std::int64_t q) {
  for (std::int64_t y = 1; y < q; ++y)
    if (mod(x * y, q) == 1) return y;
  return 0;
}

inline std::int64_t phi(std::int64_t q) { return static_cast<std::int64_t>(units(q).size()); }

inline cplx kloosterman(std::int64_t q, std::int64_t m, std::int64_t n) {
  cplx s = 0.0;
  for (auto x : units(q)) s += e(m * x + n * inverse(x, q), q);
  return s;
}

inline cplx double_kloosterman(std::int64_t q, std::int64_t l, std::int64_t m, std::int64_t n) {
  cplx s = 0.0;
  const auto u = units(q);
  for (auto x : u)
    for (auto y : u) s += e(l * x * y + m * inverse(x, q) + n * inverse(y, q), q);
  return s;
}

// #{(a1, a2, b1, b2) : a1 b1 = a2 b2 mod q}, all four coprime to q.
inline std::uint64_t energy(std::int64_t q, std::int64_t s, std::int64_t a_len, std::int64_t t, std::int64_t b_len) {
  std::uint64_t count = 0;
  auto ok = [q](std::int64_t v) { return std::gcd(mod(v, q), q) == 1; };
  for (std::int64_t a1 = s + 1; a1 <= s + a_len; ++a1)
    for (std::int64_t a2 = s + 1; a2 <= s + a_len; ++a2)
      for (std::int64_t b1 = t + 1; b1 <= t + b_len; ++b1)
        for (std::int64_t b2 = t + 1; b2 <= t + b_len; ++b2)
          if (ok(a1) && ok(a2) && ok(b1) && ok(b2) && mod(a1 * b1 - a2 * b2, q) == 0) ++count;
  return count;
}

// J_r(q; K) by enumerating all 2r-tuples.
inline std::uint64_t reciprocal_tuples(std::int64_t q, int r, std::int64_t k) {
  std::vector<std::int64_t> inv;
  for (std::int64_t x = 1; x <= k; ++x)
    if (std::gcd(x, q) == 1) inv.push_back(inverse(x, q));
  if (inv.empty()) return 0;
  std::uint64_t count = 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(2 * r), 0);
  while (true) {
    std::int64_t s = 0;
    for (int i = 0; i < r; ++i) s += inv[idx[i]] - inv[idx[r + i]];
    if (mod(s, q) == 0) ++count;
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == inv.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return count;
}

inline cplx interval_sum_direct(std::int64_t q, std::int64_t start, std::int64_t len, std::int64_t x) {
  cplx s = 0.0;
  for (std::int64_t m = start + 1; m <= start + len; ++m) s += e(m * x, q);
  return s;
}

inline std::int64_t distance_to_multiple(std::int64_t u, std::int64_t q) {
  std::int64_t best = u < 0 ? -u : u;
  for (std::int64_t k = -std::llabs(u) / q - 2; k <= std::llabs(u) / q + 2; ++k)
    best = std::min<std::int64_t>(best, std::llabs(u - k * q));
  return best;
}

}  // namespace oracle
