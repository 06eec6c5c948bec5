#include "kforms/trilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kforms/dft.hpp"
#include "kforms/error.hpp"
#include "kforms/kloosterman.hpp"

namespace kforms {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q);
}

}  // namespace

WeightMode parse_weight_mode(const std::string& name) {
  if (name == "ones") return WeightMode::ones;
  if (name == "rademacher") return WeightMode::rademacher;
  if (name == "phase") return WeightMode::phase;
  if (name == "extremal") return WeightMode::extremal;
  throw error(errc::invalid_argument, "unknown weight mode '" + name + "'");
}

const char* weight_mode_name(WeightMode mode) {
  switch (mode) {
    case WeightMode::ones: return "ones";
    case WeightMode::rademacher: return "rademacher";
    case WeightMode::phase: return "phase";
    case WeightMode::extremal: return "extremal";
  }
  return "?";
}

void validate_weights(const ResidueRing& ring, const WeightVector& w) {
  if (static_cast<std::int64_t>(w.weights.size()) != w.base.length)
    throw error(errc::length_mismatch, "weight vector does not match its interval");
  for (std::int64_t i = 0; i < w.base.length; ++i) {
    const cplx a = w.weights[i];
    if (std::abs(a) > 1.0 + 1e-12) throw error(errc::invalid_argument, "|alpha| > 1");
    if (a != 0.0 && !ring.is_unit(w.base.first() + i))
      throw error(errc::invalid_argument, "weight supported off the units");
  }
}

TrilinearInstance make_instance(std::shared_ptr<const ResidueRing> ring, WeightVector weights,
                                IntervalSet m_interval, IntervalSet n_interval) {
  validate_weights(*ring, weights);
  return {std::move(ring), std::move(weights), m_interval, n_interval};
}

std::uint64_t derive_seed(std::uint64_t root_seed, std::uint64_t q) {
  return splitmix64(root_seed ^ splitmix64(q));
}

cplx interval_phase_sum(const ResidueRing& ring, const IntervalSet& interval, std::int64_t x) {
  const std::int64_t xr = ring.reduce(x);
  if (xr == 0) return static_cast<double>(interval.length);
  const std::int64_t q = ring.q();
  const cplx head = ring.root(mulmod(ring.reduce(interval.first()), xr, q));
  const cplx span_root = ring.root(mulmod(ring.reduce(interval.length), xr, q));
  return head * (span_root - 1.0) / (ring.root(xr) - 1.0);
}

std::vector<cplx> interval_phase_table(const ResidueRing& ring, const IntervalSet& interval) {
  std::vector<cplx> out(static_cast<std::size_t>(ring.q()));
  for (std::int64_t x = 0; x < ring.q(); ++x) out[x] = interval_phase_sum(ring, interval, x);
  return out;
}

WeightVector make_weights(const ResidueRing& ring, const IntervalSet& l_interval, WeightMode mode,
                          std::uint64_t seed, std::optional<IntervalSet> m_interval,
                          std::optional<IntervalSet> n_interval) {
  WeightVector w{l_interval, std::vector<cplx>(static_cast<std::size_t>(l_interval.length), 0.0)};
  std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(ring.q())));

  std::vector<cplx> inner;
  if (mode == WeightMode::extremal) {
    if (!m_interval || !n_interval)
      throw error(errc::invalid_argument, "extremal weights need the M and N intervals");
    inner = inner_sums(ring, l_interval, *m_interval, *n_interval);
  }

  for (std::int64_t i = 0; i < l_interval.length; ++i) {
    // Draw unconditionally so the stream does not depend on the unit pattern.
    const std::uint64_t bits = gen();
    if (!ring.is_unit(l_interval.first() + i)) continue;
    switch (mode) {
      case WeightMode::ones: w.weights[i] = 1.0; break;
      case WeightMode::rademacher: w.weights[i] = (bits >> 63) ? 1.0 : -1.0; break;
      case WeightMode::phase:
        w.weights[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(bits >> 11) * 0x1.0p-53);
        break;
      case WeightMode::extremal: {
        const double mag = std::abs(inner[i]);
        w.weights[i] = mag > 0.0 ? std::conj(inner[i]) / mag : cplx(0.0);
        break;
      }
    }
  }
  return w;
}

cplx trilinear_naive(const TrilinearInstance& inst) {
  const auto& ring = inst.r();
  cplx total = 0.0;
  for (std::int64_t i = 0; i < inst.weights.base.length; ++i) {
    const cplx a = inst.weights.weights[i];
    if (a == 0.0) continue;
    const std::int64_t l = inst.weights.base.first() + i;
    cplx inner = 0.0;
    for (std::int64_t m = inst.m_interval.first(); m <= inst.m_interval.last(); ++m)
      for (std::int64_t n = inst.n_interval.first(); n <= inst.n_interval.last(); ++n)
        inner += double_naive(ring, l, m, n);
    total += a * inner;
  }
  return total;
}

std::vector<cplx> inner_sums(const ResidueRing& ring, const IntervalSet& l_interval,
                             const IntervalSet& m_interval, const IntervalSet& n_interval) {
  const std::int64_t q = ring.q();
  const auto mu = interval_phase_table(ring, m_interval);
  const auto nu = interval_phase_table(ring, n_interval);

  std::vector<cplx> g(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t v : ring.units()) g[v] = nu[ring.inv_unchecked(v)];
  const auto big_g = cyclic_dft(ring, g, Direction::forward);

  const auto units = ring.units();
  const auto nl = l_interval.length;
  std::vector<cplx> out(static_cast<std::size_t>(nl), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < nl; ++i) {
    const std::int64_t l = ring.reduce(l_interval.first() + i);
    cplx acc = 0.0;
    for (std::int64_t u : units) acc += mu[ring.inv_unchecked(u)] * big_g[mulmod(l, u, q)];
    out[i] = acc;
  }
  return out;
}

cplx trilinear_fast(const TrilinearInstance& inst) {
  const auto inner = inner_sums(inst.r(), inst.weights.base, inst.m_interval, inst.n_interval);
  cplx total = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i) total += inst.weights.weights[i] * inner[i];
  return total;
}

cplx weighted_double_sum(const ResidueRing& ring, std::int64_t l, const std::vector<cplx>& eta,
                         const std::vector<cplx>& kappa) {
  const std::int64_t q = ring.q();
  if (static_cast<std::int64_t>(eta.size()) != q || static_cast<std::int64_t>(kappa.size()) != q)
    throw error(errc::length_mismatch, "eta/kappa must have length q");
  std::vector<cplx> k(static_cast<std::size_t>(q), 0.0);
  for (std::int64_t y : ring.units()) {
    if (std::abs(eta[y]) > 1.0 + 1e-12 || std::abs(kappa[y]) > 1.0 + 1e-12)
      throw error(errc::invalid_argument, "|eta|, |kappa| must be <= 1");
    k[y] = kappa[y];
  }
  const auto big_k = cyclic_dft(ring, k, Direction::forward);
  const std::int64_t lr = ring.reduce(l);
  cplx acc = 0.0;
  for (std::int64_t x : ring.units()) acc += eta[x] * big_k[mulmod(lr, x, q)];
  return acc;
}

Theorem1Report theorem1_bounds(const TrilinearInstance& inst) {
  const auto inner = inner_sums(inst.r(), inst.weights.base, inst.m_interval, inst.n_interval);
  Theorem1Report rep;
  cplx total = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    total += inst.weights.weights[i] * inner[i];
    rep.triangle += std::abs(inst.weights.weights[i]) * std::abs(inner[i]);
  }
  rep.measured = std::abs(total);

  const double L = static_cast<double>(inst.weights.base.length);
  const double M = static_cast<double>(inst.m_interval.length);
  const double N = static_cast<double>(inst.n_interval.length);
  const double q = static_cast<double>(inst.r().q());
  rep.bound1 = (L + std::sqrt(L * M)) * std::sqrt(N) * std::pow(q, 1.5);
  rep.bound2 = (L + std::pow(L, 0.75) * std::pow(M, 0.25)) *
               (std::pow(N, 0.125) * std::pow(q, 1.75) + std::sqrt(N) * std::pow(q, 1.5));
  rep.trivial = L * M * N * q;
  rep.min_bound = std::min(rep.bound1, rep.bound2);
  rep.ratio1 = rep.measured / rep.bound1;
  rep.ratio2 = rep.measured / rep.bound2;
  rep.ratio_min = rep.measured / rep.min_bound;
  rep.ratio_trivial = rep.measured / rep.trivial;
  return rep;
}

double full_triangle_bound(const TrilinearInstance& inst) {
  const auto& ring = inst.r();
  double total = 0.0;
  for (std::int64_t n = inst.n_interval.first(); n <= inst.n_interval.last(); ++n) {
    const auto table = single_table(ring, n);
    for (std::int64_t i = 0; i < inst.weights.base.length; ++i) {
      const double a = std::abs(inst.weights.weights[i]);
      if (a == 0.0) continue;
      const std::int64_t l = inst.weights.base.first() + i;
      for (std::int64_t m = inst.m_interval.first(); m <= inst.m_interval.last(); ++m)
        total += a * std::abs(double_from_table(ring, table, l, m));
    }
  }
  return total;
}

double theorem2_reference(std::int64_t q, int r, std::int64_t l_len, std::int64_t m_len,
                          std::int64_t n_len) {
  const double L = static_cast<double>(l_len), M = static_cast<double>(m_len);
  const double N = static_cast<double>(n_len), Q = static_cast<double>(q);
  const double e = 1.0 / (2.0 * r);
  return (L + std::pow(L, 1.0 - e) * std::pow(M, e)) * (std::pow(Q, 2.0 - e) + std::sqrt(N) * std::pow(Q, 1.5));
}

}  // namespace kforms
