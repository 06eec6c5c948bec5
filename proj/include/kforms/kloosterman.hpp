#pragma once

#include <cstdint>
#include <vector>

#include "kforms/ring.hpp"

namespace kforms {

// K_q(a, n) for every residue a, with n fixed.
struct KloostermanTable {
  std::int64_t n = 0;
  std::vector<cplx> values;
};

// K_q(m, n) = sum_{x unit} e_q(m x + n x^-1). Brute force, O(phi(q)).
cplx single_sum(const ResidueRing& ring, std::int64_t m, std::int64_t n);

// All K_q(a, n) at once: the forward DFT of x -> 1_unit(x) e_q(n x^-1).
KloostermanTable single_table(const ResidueRing& ring, std::int64_t n);

// K_q(l, m, n) = sum_{x, y unit} e_q(l x y + m x^-1 + n y^-1). O(phi(q)^2), serial.
cplx double_naive(const ResidueRing& ring, std::int64_t l, std::int64_t m, std::int64_t n);

// K_q(l, m, n) = sum_{x unit} e_q(m x^-1) K_q(l x, n), read off a table for n.
cplx double_from_table(const ResidueRing& ring, const KloostermanTable& table, std::int64_t l,
                       std::int64_t m);

// double_from_table with a freshly built table; one DFT plus O(phi(q)).
cplx double_fast(const ResidueRing& ring, std::int64_t l, std::int64_t m, std::int64_t n);

// tau(q) gcd(m, n, q)^{1/2} q^{1/2}.
double weil_reference(const ResidueRing& ring, std::int64_t m, std::int64_t n);

}  // namespace kforms
