#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kforms/report.hpp"
#include "kforms/ring.hpp"
#include "kforms/trilinear.hpp"

namespace kforms {

struct SweepOptions {
  double budget_ms = 0.0;     // wall-clock budget; 0 means unlimited
  bool timing = true;         // false writes runtime_ms = 0 (byte-stable output)
  double work_budget = 1e9;   // cap on L * q for trilinear sweeps
};

// Parses "a,b,c", "a..b" and "a..b:step" items (comma separated, mixed).
std::vector<std::int64_t> parse_grid(const std::string& text);

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi);

SweepResult verify_thm1_sweep(const std::vector<std::int64_t>& q_list, const IntervalSet& l, const IntervalSet& m,
                              const IntervalSet& n, WeightMode mode, std::uint64_t seed, double threshold,
                              const SweepOptions& opts = {});

struct Thm2Result {
  SweepResult sweep;
  double allowed_exceptions = 0.0;  // Q^{1 - 2 r epsilon}
  // Moduli for which J_r(q; K_j) > (K_j^{2r}/q + K_j^r) Q^{2 r epsilon} for some j,
  // K_j = min(floor(2 e^j Q / N), q).
  std::int64_t reciprocal_exceptions = 0;
};

Thm2Result verify_thm2_sweep(std::int64_t big_q, int r, const IntervalSet& l, const IntervalSet& m,
                             const IntervalSet& n, WeightMode mode, std::uint64_t seed, double epsilon,
                             double threshold, const SweepOptions& opts = {});

enum class Lemma { fourth_moment, energy, reciprocal_mod, reciprocal_rational, reciprocal_average };

Lemma parse_lemma(const std::string& name);

struct LemmaGrid {
  std::vector<std::int64_t> q_list;
  std::vector<std::int64_t> h_list;  // empty: every H in 1..q
  std::int64_t offset = 0;           // k for intervals {k+1, ...}; also s and t
  std::vector<std::int64_t> a_list;
  std::vector<std::int64_t> b_list;
  std::vector<std::int64_t> k_list;  // empty for reciprocal_mod: every K in 1..q
  std::vector<std::int64_t> big_q_list;
  int r = 2;
  // fourth moment only: compare against phi(q) (H^2 + H^4/q) instead of H^2.
  bool normalized = false;
};

// Fitted exponent is taken against H (fourth moment), q (energy), K (both
// reciprocal counts) or Q (average).
SweepResult verify_lemma_sweep(Lemma lemma, const LemmaGrid& grid, double threshold,
                               const SweepOptions& opts = {});

}  // namespace kforms
