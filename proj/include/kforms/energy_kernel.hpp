#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kforms/ring.hpp"

namespace kforms::detail {

// Unit residues of the members of an interval (with repetition if the
// interval wraps around q).
std::vector<std::int64_t> unit_residues(const ResidueRing& ring, const IntervalSet& interval);

// sum_s c(s)^2 where c(s) = #{(a, b) in A x B : a b = s mod q}.
std::uint64_t product_energy(const ResidueRing& ring, std::span<const std::int64_t> a,
                             std::span<const std::int64_t> b);

}  // namespace kforms::detail

namespace kforms::detail {

// sum_s w(s)^2 where w is the r-fold cyclic self-convolution (mod q) of the
// indicator of `support` (support entries may repeat). Exact.
std::uint64_t r_fold_energy(std::int64_t q, int r, std::span<const std::int64_t> support);

}  // namespace kforms::detail
