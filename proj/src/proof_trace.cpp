#include "kforms/proof_trace.hpp"

#include <cmath>
#include <string>

#include "kforms/congruence.hpp"
#include "kforms/dft.hpp"
#include "kforms/energy_kernel.hpp"
#include "kforms/error.hpp"

namespace kforms {
namespace {

constexpr double kSlack = 1e-9;

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kSlack) + kSlack; }

}  // namespace

int dyadic_levels(std::int64_t len) {
  if (len <= 2) return 0;
  return static_cast<int>(std::ceil(std::log(static_cast<double>(len) / 2.0)));
}

int dyadic_level(std::int64_t q, std::int64_t len, std::int64_t abs_x) {
  if (abs_x * len <= q) return 0;
  const double scaled = static_cast<double>(abs_x) * static_cast<double>(len) / static_cast<double>(q);
  int i = std::max(1, static_cast<int>(std::ceil(std::log(scaled))));
  // Level i needs e^{i-1} < scaled <= e^i; nudge across rounding at the edges.
  while (i > 1 && scaled <= std::exp(static_cast<double>(i - 1))) --i;
  while (scaled > std::exp(static_cast<double>(i))) ++i;
  return std::min(i, dyadic_levels(len));
}

DyadicDecomposition dyadic_decomposition(const ResidueRing& ring, std::int64_t m_len, std::int64_t n_len) {
  if (m_len < 1 || n_len < 1) throw error(errc::invalid_argument, "lengths must be >= 1");
  DyadicDecomposition d;
  d.q = ring.q();
  d.m_len = m_len;
  d.n_len = n_len;
  d.levels_m = dyadic_levels(m_len);
  d.levels_n = dyadic_levels(n_len);
  d.q_plus.resize(d.levels_m + 1);
  d.q_minus.resize(d.levels_m + 1);
  d.r_plus.resize(d.levels_n + 1);
  d.r_minus.resize(d.levels_n + 1);
  for (std::int64_t u : ring.units()) {
    const std::int64_t x = centered_rep(ring, u);
    const std::int64_t ax = x < 0 ? -x : x;
    const int i = dyadic_level(d.q, m_len, ax);
    const int j = dyadic_level(d.q, n_len, ax);
    (x > 0 ? d.q_plus : d.q_minus)[i].push_back(x);
    (x > 0 ? d.r_plus : d.r_minus)[j].push_back(x);
  }
  return d;
}

ProofTrace proof_trace(const TrilinearInstance& inst, int r) {
  if (r < 1 || r > 3) throw error(errc::r_unsupported, "r = " + std::to_string(r));
  const auto& ring = inst.r();
  const std::int64_t q = ring.q();
  const auto& w = inst.weights;
  const double L = static_cast<double>(w.base.length);
  const double M = static_cast<double>(inst.m_interval.length);
  const double N = static_cast<double>(inst.n_interval.length);

  ProofTrace tr;
  tr.r = r;
  tr.sets = dyadic_decomposition(ring, inst.m_interval.length, inst.n_interval.length);
  tr.total = trilinear_fast(inst);

  const auto mu = interval_phase_table(ring, inst.m_interval);
  const auto nu = interval_phase_table(ring, inst.n_interval);

  std::vector<std::pair<std::int64_t, cplx>> support;  // (l mod q, alpha_l)
  for (std::int64_t i = 0; i < w.base.length; ++i)
    if (w.weights[i] != 0.0) support.emplace_back(ring.reduce(w.base.first() + i), w.weights[i]);

  for (int i = 0; i <= tr.sets.levels_m; ++i) {
    for (int sign : {1, -1}) {
      const auto& xs = (sign > 0 ? tr.sets.q_plus : tr.sets.q_minus)[i];
      TLevel lv;
      lv.i = i;
      lv.sign = sign;
      lv.t.assign(static_cast<std::size_t>(q), 0.0);
      std::vector<std::int64_t> lambdas;
      for (std::int64_t x : xs) {
        const std::int64_t xr = ring.reduce(x);
        lv.mu_max = std::max(lv.mu_max, std::abs(mu[xr]));
        const std::int64_t xinv = ring.inv_unchecked(xr);
        for (const auto& [l, a] : support) {
          const auto lam = static_cast<std::int64_t>(static_cast<__int128>(l) * xinv % q);
          lv.t[lam] += a * mu[xr];
          lambdas.push_back(lam);
        }
      }
      lv.pairs = lambdas.size();
      std::vector<std::uint64_t> count(static_cast<std::size_t>(q), 0);
      for (auto lam : lambdas) ++count[lam];
      for (std::int64_t lam = 0; lam < q; ++lam) {
        lv.energy += count[lam] * count[lam];
        const double a = std::abs(lv.t[lam]);
        lv.abs_sum += a;
        lv.sq_sum += a * a;
        if (!ring.unit_mask()[lam] && lv.t[lam] != 0.0) lv.nonunit_zero = false;
      }
      lv.first_reference = static_cast<double>(q) * L;
      lv.second_reference = static_cast<double>(q) * L * L + std::exp(-static_cast<double>(i)) * q * L * M;

      tr.nonunit_zero = tr.nonunit_zero && lv.nonunit_zero;
      tr.first_moment_chain_ok = tr.first_moment_chain_ok && leq(lv.abs_sum, lv.mu_max * static_cast<double>(lv.pairs));
      tr.second_moment_chain_ok =
          tr.second_moment_chain_ok && leq(lv.sq_sum, lv.mu_max * lv.mu_max * static_cast<double>(lv.energy));
      tr.t_levels.push_back(std::move(lv));
    }
  }

  for (int j = 0; j <= tr.sets.levels_n; ++j) {
    const auto k_raw = static_cast<std::int64_t>(std::floor(std::exp(static_cast<double>(j)) * q / N));
    const std::int64_t k = std::clamp<std::int64_t>(k_raw, 1, q);
    const std::uint64_t jr = reciprocal_count_mod(ring, r, k).value;
    for (int sign : {1, -1}) {
      const auto& ys = (sign > 0 ? tr.sets.r_plus : tr.sets.r_minus)[j];
      RLevel lv;
      lv.j = j;
      lv.sign = sign;
      lv.k = k;
      lv.jr = jr;
      std::vector<cplx> h(static_cast<std::size_t>(q), 0.0);
      std::vector<std::int64_t> inverses;
      for (std::int64_t y : ys) {
        const std::int64_t yr = ring.reduce(y);
        const std::int64_t yinv = ring.inv_unchecked(yr);
        h[yinv] += nu[yr];
        inverses.push_back(yinv);
        lv.nu_max = std::max(lv.nu_max, std::abs(nu[yr]));
      }
      lv.h = cyclic_dft(ring, h, Direction::forward);
      for (const auto& v : lv.h) lv.moment += std::pow(std::norm(v), r);
      lv.restricted = detail::r_fold_energy(q, r, inverses);
      lv.reference = std::exp(-2.0 * r * j) * q * std::pow(N, 2.0 * r) * static_cast<double>(jr);

      const double scale = static_cast<double>(q) * std::pow(lv.nu_max, 2.0 * r);
      tr.moment_chain_ok = tr.moment_chain_ok && leq(lv.moment, scale * static_cast<double>(lv.restricted)) &&
                           lv.restricted <= jr;
      tr.r_levels.push_back(std::move(lv));
    }
  }

  const double hold_a = 1.0 - 1.0 / r, hold_b = 1.0 / (2.0 * r);
  for (const auto& tl : tr.t_levels) {
    for (const auto& rl : tr.r_levels) {
      TraceCell cell;
      cell.i = tl.i;
      cell.j = rl.j;
      cell.sign_x = tl.sign;
      cell.sign_y = rl.sign;
      cplx s = 0.0;
      for (std::int64_t lam = 0; lam < q; ++lam)
        if (tl.t[lam] != 0.0) s += tl.t[lam] * rl.h[lam];
      cell.s = s;
      cell.holder_rhs = std::pow(tl.abs_sum, hold_a) * std::pow(tl.sq_sum, hold_b) * std::pow(rl.moment, hold_b);
      const double mag = std::abs(s);
      cell.holder_ratio = cell.holder_rhs > 0.0 ? mag / cell.holder_rhs : (mag > kSlack ? INFINITY : 0.0);
      if (!leq(mag, cell.holder_rhs)) tr.holder_ok = false;
      tr.max_holder_ratio = std::max(tr.max_holder_ratio, cell.holder_ratio);
      tr.reconstruction += s;
      tr.cells.push_back(cell);
    }
  }
  return tr;
}

}  // namespace kforms
