#pragma once

#include <span>
#include <vector>

#include "kforms/ring.hpp"

namespace kforms {

using ComplexVector = std::vector<cplx>;

// forward:  F(t) = sum_z f(z) e_q(tz)
// inverse:  f(z) = (1/q) sum_t F(t) e_q(-tz)
enum class Direction { forward, inverse };

// Lengths at or below this use the quadratic transform directly.
inline constexpr std::int64_t kNaiveDftCutoff = 64;

ComplexVector cyclic_dft(const ResidueRing& ring, std::span<const cplx> f, Direction dir);

// O(q^2) reference transform over the ring's root table. Serial.
ComplexVector dft_naive(const ResidueRing& ring, std::span<const cplx> f, Direction dir);

// O(q log q) transform of arbitrary length (FFTW backend).
ComplexVector dft_fast(std::span<const cplx> f, Direction dir);

}  // namespace kforms
