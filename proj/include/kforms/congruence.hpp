#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kforms/characters.hpp"
#include "kforms/ring.hpp"

namespace kforms {

// An exact count next to a reference bound expression (all q^{o(1)} factors
// and implied constants set to 1).
struct CountReport {
  std::uint64_t value = 0;
  double bound_value = 0.0;
  double ratio = 0.0;
};

// E(A, B) = #{a1 b1 = a2 b2 mod q : a_i in A, b_i in B, all units}.
// Reference A^2 B^2 / q + A B.
CountReport multiplicative_energy(const ResidueRing& ring, const IntervalSet& a, const IntervalSet& b);

struct EnergyIdentity {
  double energy = 0.0;     // (1/phi) sum_chi |sum_a chi(a)|^2 |sum_b chi(b)|^2
  double principal = 0.0;  // A_u^2 B_u^2 / phi
  double remainder = 0.0;  // non-principal part R
};

// Character-side evaluation of E(A, B); energy == principal + remainder.
EnergyIdentity energy_character_identity(const ResidueRing& ring, const CharacterTable& table,
                                         const IntervalSet& a, const IntervalSet& b);

// J_r(q; K): 2r-tuples of units in [1, K] with equal sums of inverses mod q.
// Exact integer cyclic self-convolution of the inverse multiplicity vector.
CountReport reciprocal_count_mod(const ResidueRing& ring, int r, std::int64_t k);

// Same count by tallying all left-hand r-tuples directly. Serial, O(K^r).
std::uint64_t reciprocal_tally_naive(const ResidueRing& ring, int r, std::int64_t k);

// ((1/q) sum_t |sum_{x <= K unit} e_q(t x^-1)|^{2r}, exact J_r(q; K)).
std::pair<double, std::uint64_t> reciprocal_moment_identity(const ResidueRing& ring, int r, std::int64_t k);

inline constexpr double kDefaultRationalBudget = 1e8;

// J_r(K): 2r-tuples in [1, K] with 1/x_1 + ... + 1/x_r = 1/x_{r+1} + ... exactly.
// Reference K^r. Throws budget_exceeded when r K^r exceeds `budget`.
CountReport reciprocal_count_rational(int r, std::int64_t k, double budget = kDefaultRationalBudget);

struct AverageReciprocal {
  std::int64_t big_q = 0;
  int r = 0;
  std::int64_t k = 0;
  std::uint64_t total = 0;  // sum over q in [Q, 2Q] of J_r(q; K)
  double average = 0.0;     // total / Q
  double reference = 0.0;   // K^{2r} / Q + K^r
  double ratio = 0.0;
};

AverageReciprocal average_reciprocal_sweep(std::int64_t big_q, int r, std::int64_t k);

// Reference expression used for J_r(q; K): K for r = 1, K^{7/2} q^{-1/2} + K^2
// for r = 2, and K^{2r}/q + K^r otherwise.
double reciprocal_mod_reference(std::int64_t q, int r, std::int64_t k);

}  // namespace kforms
