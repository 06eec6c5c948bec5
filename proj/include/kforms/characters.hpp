#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kforms/ring.hpp"

namespace kforms {

// One cyclic factor of (Z/q)^*: a generator of order `order` inside the
// component modulo `modulus` = p^e, with a dense discrete-log table.
struct CyclicFactor {
  std::int64_t prime = 0;
  std::int64_t modulus = 0;
  std::int64_t generator = 0;
  std::int64_t order = 0;
  std::vector<std::int32_t> log;  // indexed by x mod modulus; -1 off units
};

// The full group of Dirichlet characters mod q. Characters are indexed in
// mixed radix over the factor orders (first factor least significant); index
// 0 is the principal character.
class CharacterTable {
 public:
  explicit CharacterTable(const ResidueRing& ring);

  std::int64_t q() const noexcept { return q_; }
  std::int64_t char_count() const noexcept { return char_count_; }
  // Exponent of the group: every character value is an exponent()-th root of unity.
  std::int64_t exponent() const noexcept { return exponent_; }
  const std::vector<CyclicFactor>& factors() const noexcept { return factors_; }

  // Mixed-radix digits of a character index.
  std::vector<std::int64_t> digits(std::int64_t chi_index) const;

  // chi(x) = e_exponent(phase); returns -1 when gcd(x, q) > 1.
  std::int64_t phase(std::int64_t chi_index, std::int64_t x) const;

  cplx value(std::int64_t chi_index, std::int64_t x) const;

  // chi(x) for all residues x in [0, q).
  std::vector<cplx> values(std::int64_t chi_index) const;

 private:
  std::int64_t q_;
  std::int64_t char_count_ = 1;
  std::int64_t exponent_ = 1;
  std::vector<CyclicFactor> factors_;
  std::vector<std::uint8_t> unit_mask_;
  std::vector<cplx> roots_;  // roots of unity of order exponent_
};

CharacterTable build_characters(const ResidueRing& ring);

cplx eval_character(const CharacterTable& table, std::int64_t chi_index, std::int64_t x);

// sum over all characters of |sum_{z in interval} chi(z)|^4, by direct
// character summation (serial reference).
double fourth_moment(const CharacterTable& table, const IntervalSet& interval);

// Same quantity through the orthogonality identity: phi(q) times the number
// of unit quadruples with x1 x2 = x3 x4 (mod q). Exact.
std::uint64_t fourth_moment_by_count(const ResidueRing& ring, const IntervalSet& interval);

// fourth_moment_by_count for the intervals {k+1..k+H}, H = 1..max_length.
std::vector<std::uint64_t> fourth_moment_prefixes(const ResidueRing& ring, std::int64_t k,
                                                  std::int64_t max_length);

std::pair<double, double> moment_identity_check(const CharacterTable& table, const ResidueRing& ring,
                                                const IntervalSet& interval);

}  // namespace kforms
