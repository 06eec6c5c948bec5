#pragma once

#include <cstdint>
#include <vector>

#include "kforms/ring.hpp"
#include "kforms/trilinear.hpp"

namespace kforms {

// Annuli of centered unit representatives in (-q/2, q/2]. Level 0 holds
// 0 < |x| <= q/len; level i >= 1 holds e^{i-1} q/len < |x| <= min(q/2, e^i q/len).
struct DyadicDecomposition {
  std::int64_t q = 0;
  std::int64_t m_len = 0;
  std::int64_t n_len = 0;
  int levels_m = 0;  // I = ceil(log(M/2)), 0 for M <= 2
  int levels_n = 0;  // J = ceil(log(N/2)), 0 for N <= 2
  std::vector<std::vector<std::int64_t>> q_plus, q_minus;  // indexed by i
  std::vector<std::vector<std::int64_t>> r_plus, r_minus;  // indexed by j
};

// ceil(log(len / 2)) with natural log; 0 when len <= 2.
int dyadic_levels(std::int64_t len);

// Level of a centered representative of absolute value `abs_x` > 0.
int dyadic_level(std::int64_t q, std::int64_t len, std::int64_t abs_x);

DyadicDecomposition dyadic_decomposition(const ResidueRing& ring, std::int64_t m_len, std::int64_t n_len);

// Per (i, sign): the map lambda -> T_i(lambda) = sum_{l x^-1 = lambda} alpha_l mu_x.
struct TLevel {
  int i = 0;
  int sign = 1;
  std::vector<cplx> t;
  double abs_sum = 0.0;         // sum_lambda |T|
  double sq_sum = 0.0;          // sum_lambda |T|^2
  double mu_max = 0.0;          // max |mu_x| over the level
  std::uint64_t pairs = 0;      // #{(l, x)} with alpha_l != 0
  std::uint64_t energy = 0;     // #{l1 x1^-1 = l2 x2^-1} over those pairs
  double first_reference = 0.0;   // q L
  double second_reference = 0.0;  // q L^2 + e^{-i} q L M
  bool nonunit_zero = true;
};

// Per (j, sign): the 2r-th moment of lambda -> sum_{y in R_j} nu_y e_q(lambda y^-1).
struct RLevel {
  int j = 0;
  int sign = 1;
  std::vector<cplx> h;
  double moment = 0.0;          // sum over all lambda in Z_q
  double nu_max = 0.0;
  std::uint64_t restricted = 0; // #{y_i in R_j : sum of r inverses congruent}
  std::int64_t k = 0;           // min(floor(e^j q / N), q)
  std::uint64_t jr = 0;         // J_r(q; k)
  double reference = 0.0;       // e^{-2rj} q N^{2r} J_r(q; k)
};

struct TraceCell {
  int i = 0, j = 0;
  int sign_x = 1, sign_y = 1;
  cplx s;
  double holder_rhs = 0.0;
  double holder_ratio = 0.0;  // |S| / rhs, must not exceed 1
};

struct ProofTrace {
  int r = 1;
  DyadicDecomposition sets;
  cplx total;           // S_q from the fast path
  cplx reconstruction;  // sum over all cells
  std::vector<TLevel> t_levels;
  std::vector<RLevel> r_levels;
  std::vector<TraceCell> cells;

  // Exact inequalities of the argument, evaluated per level/cell.
  bool first_moment_chain_ok = true;   // sum|T| <= mu_max * pairs
  bool second_moment_chain_ok = true;  // sum|T|^2 <= mu_max^2 * energy
  bool moment_chain_ok = true;         // moment <= q nu_max^{2r} restricted <= q nu_max^{2r} J_r
  bool holder_ok = true;
  bool nonunit_zero = true;
  double max_holder_ratio = 0.0;
};

ProofTrace proof_trace(const TrilinearInstance& inst, int r);

}  // namespace kforms
