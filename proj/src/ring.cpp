#include "kforms/ring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "kforms/error.hpp"

namespace kforms {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::modulus_too_small: return "modulus-too-small";
    case errc::not_a_unit: return "not-a-unit";
    case errc::length_mismatch: return "length-mismatch";
    case errc::index_out_of_range: return "index-out-of-range";
    case errc::k_out_of_range: return "K-out-of-range";
    case errc::budget_exceeded: return "budget-exceeded";
    case errc::r_unsupported: return "r-unsupported";
    case errc::dimension_too_large: return "dimension-too-large";
    case errc::invalid_grid: return "invalid-grid";
    case errc::insufficient_points: return "insufficient-points";
    case errc::nonpositive_value: return "nonpositive-value";
    case errc::invalid_argument: return "invalid-argument";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) noexcept {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::int64_t divisor_count(std::int64_t n) {
  std::int64_t tau = 1;
  for (auto [p, e] : factorize(n)) tau *= (e + 1);
  return tau;
}

std::int64_t inverse_by_egcd(std::int64_t x, std::int64_t q) {
  std::int64_t a = ((x % q) + q) % q, b = q;
  std::int64_t s0 = 1, s1 = 0;
  while (b != 0) {
    std::int64_t t = a / b;
    std::int64_t r = a - t * b;
    a = b;
    b = r;
    std::int64_t s = s0 - t * s1;
    s0 = s1;
    s1 = s;
  }
  if (a != 1) throw error(errc::not_a_unit, std::to_string(x) + " mod " + std::to_string(q));
  s0 %= q;
  return s0 < 0 ? s0 + q : s0;
}

ResidueRing::ResidueRing(std::int64_t q) : q_(q) {
  if (q < 2) throw error(errc::modulus_too_small, "q = " + std::to_string(q));

  factors_ = factorize(q);
  for (auto [p, e] : factors_) tau_ *= (e + 1);

  unit_mask_.assign(static_cast<std::size_t>(q), 1);
  unit_mask_[0] = 0;
  for (auto [p, e] : factors_)
    for (std::int64_t m = 0; m < q; m += p) unit_mask_[m] = 0;

  units_.reserve(static_cast<std::size_t>(q));
  for (std::int64_t x = 1; x < q; ++x)
    if (unit_mask_[x]) units_.push_back(x);
  phi_ = static_cast<std::int64_t>(units_.size());

  // Batch inversion: prefix products, one extended gcd, then walk back.
  inv_.assign(static_cast<std::size_t>(q), 0);
  std::vector<std::int64_t> prefix(units_.size());
  auto mulmod = [q](std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q);
  };
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    acc = mulmod(acc, units_[i]);
    prefix[i] = acc;
  }
  std::int64_t inv_acc = inverse_by_egcd(acc, q);
  for (std::size_t i = units_.size(); i-- > 0;) {
    std::int64_t before = i == 0 ? 1 : prefix[i - 1];
    inv_[units_[i]] = mulmod(inv_acc, before);
    inv_acc = mulmod(inv_acc, units_[i]);
  }

  roots_.resize(static_cast<std::size_t>(q));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
  for (std::int64_t k = 0; k < q; ++k) roots_[k] = std::polar(1.0, step * static_cast<double>(k));
}

ResidueRing build_ring(std::int64_t q) { return ResidueRing(q); }

IntervalSet::IntervalSet(std::int64_t start_, std::int64_t length_) : start(start_), length(length_) {
  if (length_ < 1) throw error(errc::invalid_argument, "interval length must be >= 1");
}

IntervalSet parse_interval(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw error(errc::invalid_argument, "bad interval '" + text + "'");
    return v;
  };
  auto colon = text.find(':');
  if (colon == std::string::npos) return IntervalSet(0, parse_int(text));
  std::string_view sv(text);
  return IntervalSet(parse_int(sv.substr(0, colon)), parse_int(sv.substr(colon + 1)));
}

std::int64_t mod_inverse(const ResidueRing& ring, std::int64_t x) {
  std::int64_t r = ring.reduce(x);
  if (!ring.unit_mask()[r])
    throw error(errc::not_a_unit, std::to_string(x) + " mod " + std::to_string(ring.q()));
  return ring.inv_unchecked(r);
}

cplx eq_eval(const ResidueRing& ring, std::int64_t z) { return ring.root(ring.reduce(z)); }

std::int64_t centered_dist(const ResidueRing& ring, std::int64_t u) {
  std::int64_t r = ring.reduce(u);
  return std::min(r, ring.q() - r);
}

std::int64_t centered_rep(const ResidueRing& ring, std::int64_t z) {
  std::int64_t r = ring.reduce(z);
  return 2 * r > ring.q() ? r - ring.q() : r;
}

}  // namespace kforms
