#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kforms {

using cplx = std::complex<double>;

// Arithmetic context for Z_q. Immutable after construction.
class ResidueRing {
 public:
  explicit ResidueRing(std::int64_t q);

  std::int64_t q() const noexcept { return q_; }
  std::int64_t phi() const noexcept { return phi_; }
  std::int64_t tau() const noexcept { return tau_; }

  // Prime factorization of q as (p, e) pairs in increasing p.
  const std::vector<std::pair<std::int64_t, int>>& factors() const noexcept { return factors_; }

  std::int64_t reduce(std::int64_t z) const noexcept {
    std::int64_t r = z % q_;
    return r < 0 ? r + q_ : r;
  }

  bool is_unit(std::int64_t x) const noexcept { return unit_mask_[reduce(x)] != 0; }

  // Inverse of a unit residue; 0 for non-units. No reduction is performed.
  std::int64_t inv_unchecked(std::int64_t r) const noexcept { return inv_[r]; }

  // e_q(z) for already-reduced z in [0, q).
  const cplx& root(std::int64_t r) const noexcept { return roots_[r]; }

  std::span<const std::uint8_t> unit_mask() const noexcept { return unit_mask_; }
  std::span<const std::int64_t> inv_table() const noexcept { return inv_; }
  std::span<const std::int64_t> units() const noexcept { return units_; }

 private:
  std::int64_t q_;
  std::int64_t phi_ = 0;
  std::int64_t tau_ = 1;
  std::vector<std::pair<std::int64_t, int>> factors_;
  std::vector<std::uint8_t> unit_mask_;
  std::vector<std::int64_t> inv_;
  std::vector<std::int64_t> units_;
  std::vector<cplx> roots_;
};

ResidueRing build_ring(std::int64_t q);

// Block of consecutive integers {start+1, ..., start+length}.
struct IntervalSet {
  std::int64_t start = 0;
  std::int64_t length = 1;

  IntervalSet() = default;
  IntervalSet(std::int64_t start_, std::int64_t length_);

  std::int64_t first() const noexcept { return start + 1; }
  std::int64_t last() const noexcept { return start + length; }
  bool contains(std::int64_t z) const noexcept { return z > start && z <= start + length; }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
};

// Parses "start:length" or a bare "length" (start 0).
IntervalSet parse_interval(const std::string& text);

std::int64_t mod_inverse(const ResidueRing& ring, std::int64_t x);

// Single-shot inverse by the extended Euclidean algorithm; throws not_a_unit.
std::int64_t inverse_by_egcd(std::int64_t x, std::int64_t q);

cplx eq_eval(const ResidueRing& ring, std::int64_t z);

// <u>_q: distance from u to the nearest multiple of q.
std::int64_t centered_dist(const ResidueRing& ring, std::int64_t u);

// Representative of z in (-q/2, q/2].
std::int64_t centered_rep(const ResidueRing& ring, std::int64_t z);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) noexcept;

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

std::int64_t divisor_count(std::int64_t n);

}  // namespace kforms
