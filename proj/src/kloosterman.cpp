#include "kforms/kloosterman.hpp"

#include <cmath>

#include "kforms/dft.hpp"

namespace kforms {

cplx single_sum(const ResidueRing& ring, std::int64_t m, std::int64_t n) {
  const std::int64_t q = ring.q();
  const std::int64_t mr = ring.reduce(m), nr = ring.reduce(n);
  cplx acc = 0.0;
  for (std::int64_t x : ring.units()) {
    auto e = static_cast<std::int64_t>((static_cast<__int128>(mr) * x + static_cast<__int128>(nr) * ring.inv_unchecked(x)) % q);
    acc += ring.root(e);
  }
  return acc;
}

KloostermanTable single_table(const ResidueRing& ring, std::int64_t n) {
  const std::int64_t q = ring.q();
  const std::int64_t nr = ring.reduce(n);
  std::vector<cplx> f(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t x : ring.units())
    f[x] = ring.root(static_cast<std::int64_t>(static_cast<__int128>(nr) * ring.inv_unchecked(x) % q));
  return {n, cyclic_dft(ring, f, Direction::forward)};
}

cplx double_naive(const ResidueRing& ring, std::int64_t l, std::int64_t m, std::int64_t n) {
  const std::int64_t q = ring.q();
  const std::int64_t lr = ring.reduce(l), mr = ring.reduce(m), nr = ring.reduce(n);
  cplx acc = 0.0;
  for (std::int64_t x : ring.units()) {
    const std::int64_t lx = static_cast<std::int64_t>(static_cast<__int128>(lr) * x % q);
    const std::int64_t mx = static_cast<std::int64_t>(static_cast<__int128>(mr) * ring.inv_unchecked(x) % q);
    for (std::int64_t y : ring.units()) {
      const auto e = static_cast<std::int64_t>(
          (static_cast<__int128>(lx) * y + mx + static_cast<__int128>(nr) * ring.inv_unchecked(y)) % q);
      acc += ring.root(e);
    }
  }
  return acc;
}

cplx double_from_table(const ResidueRing& ring, const KloostermanTable& table, std::int64_t l,
                       std::int64_t m) {
  const std::int64_t q = ring.q();
  const std::int64_t lr = ring.reduce(l), mr = ring.reduce(m);
  cplx acc = 0.0;
  for (std::int64_t x : ring.units()) {
    const auto lx = static_cast<std::int64_t>(static_cast<__int128>(lr) * x % q);
    const auto mx = static_cast<std::int64_t>(static_cast<__int128>(mr) * ring.inv_unchecked(x) % q);
    acc += ring.root(mx) * table.values[lx];
  }
  return acc;
}

cplx double_fast(const ResidueRing& ring, std::int64_t l, std::int64_t m, std::int64_t n) {
  return double_from_table(ring, single_table(ring, n), l, m);
}

double weil_reference(const ResidueRing& ring, std::int64_t m, std::int64_t n) {
  const std::int64_t g = gcd_i64(gcd_i64(m, n), ring.q());
  return static_cast<double>(ring.tau()) * std::sqrt(static_cast<double>(g)) *
         std::sqrt(static_cast<double>(ring.q()));
}

}  // namespace kforms
