#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kforms/ring.hpp"

namespace kforms {

// Weights alpha_l on the members of an interval, |alpha_l| <= 1 and zero off
// the units of Z_q.
struct WeightVector {
  IntervalSet base;
  std::vector<cplx> weights;  // weights[i] belongs to l = base.first() + i

  cplx at(std::int64_t l) const { return base.contains(l) ? weights[l - base.first()] : cplx(0.0); }
};

enum class WeightMode { ones, rademacher, phase, extremal };

WeightMode parse_weight_mode(const std::string& name);
const char* weight_mode_name(WeightMode mode);

// Throws invalid_argument unless |alpha| <= 1 and alpha vanishes off units.
void validate_weights(const ResidueRing& ring, const WeightVector& w);

struct TrilinearInstance {
  std::shared_ptr<const ResidueRing> ring;
  WeightVector weights;
  IntervalSet m_interval;
  IntervalSet n_interval;

  const ResidueRing& r() const { return *ring; }
};

TrilinearInstance make_instance(std::shared_ptr<const ResidueRing> ring, WeightVector weights,
                                IntervalSet m_interval, IntervalSet n_interval);

// Stable per-(seed, q) generator seed.
std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t q);

// Extremal mode needs the M and N intervals: it sets alpha_l = conj(W_l)/|W_l|
// with W_l = sum_{m, n} K_q(l, m, n), and 0 where W_l vanishes.
WeightVector make_weights(const ResidueRing& ring, const IntervalSet& l_interval, WeightMode mode,
                          std::uint64_t seed, std::optional<IntervalSet> m_interval = std::nullopt,
                          std::optional<IntervalSet> n_interval = std::nullopt);

// mu_x = sum_{m in interval} e_q(m x) in closed form.
cplx interval_phase_sum(const ResidueRing& ring, const IntervalSet& interval, std::int64_t x);

// mu_x for every residue x.
std::vector<cplx> interval_phase_table(const ResidueRing& ring, const IntervalSet& interval);

// S_q(alpha; L, M, N) from double_naive for every (l, m, n). Oracle only.
cplx trilinear_naive(const TrilinearInstance& inst);

// W_l = sum_{m in M} sum_{n in N} K_q(l, m, n) for every l in `l_interval`,
// via sum_u mu(u^-1) G(l u) with G the DFT of v -> 1_unit(v) nu(v^-1).
std::vector<cplx> inner_sums(const ResidueRing& ring, const IntervalSet& l_interval,
                             const IntervalSet& m_interval, const IntervalSet& n_interval);

cplx trilinear_fast(const TrilinearInstance& inst);

// sum_{x, y unit} eta_x kappa_y e_q(l x y); eta and kappa have length q and
// modulus at most 1. Entries at non-units are ignored.
cplx weighted_double_sum(const ResidueRing& ring, std::int64_t l, const std::vector<cplx>& eta,
                         const std::vector<cplx>& kappa);

struct Theorem1Report {
  double measured = 0.0;  // |S_q|
  double triangle = 0.0;  // sum_l |alpha_l| |W_l|
  double bound1 = 0.0;    // (L + L^{1/2} M^{1/2}) N^{1/2} q^{3/2}
  double bound2 = 0.0;    // (L + L^{3/4} M^{1/4}) (N^{1/8} q^{7/4} + N^{1/2} q^{3/2})
  double trivial = 0.0;   // L M N q
  double min_bound = 0.0;
  double ratio1 = 0.0;
  double ratio2 = 0.0;
  double ratio_min = 0.0;
  double ratio_trivial = 0.0;
};

Theorem1Report theorem1_bounds(const TrilinearInstance& inst);

// sum_l |alpha_l| sum_m sum_n |K_q(l, m, n)|.
double full_triangle_bound(const TrilinearInstance& inst);

// (L + L^{1-1/2r} M^{1/2r}) (q^{2-1/2r} + N^{1/2} q^{3/2}).
double theorem2_reference(std::int64_t q, int r, std::int64_t l_len, std::int64_t m_len,
                          std::int64_t n_len);

}  // namespace kforms
