#include "kforms/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "kforms/dft.hpp"
#include "kforms/energy_kernel.hpp"
#include "kforms/error.hpp"

namespace kforms {
namespace {

double safe_ratio(double value, double bound) { return bound > 0.0 ? value / bound : 0.0; }

void check_k(const ResidueRing& ring, int r, std::int64_t k) {
  if (r < 1) throw error(errc::invalid_argument, "r must be >= 1");
  if (k < 1 || k > ring.q())
    throw error(errc::k_out_of_range, "K = " + std::to_string(k) + ", q = " + std::to_string(ring.q()));
}

std::vector<std::int64_t> inverses_up_to(const ResidueRing& ring, std::int64_t k) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= k; ++x)
    if (ring.is_unit(x)) out.push_back(ring.inv_unchecked(ring.reduce(x)));
  return out;
}

}  // namespace

CountReport multiplicative_energy(const ResidueRing& ring, const IntervalSet& a, const IntervalSet& b) {
  auto ua = detail::unit_residues(ring, a);
  auto ub = detail::unit_residues(ring, b);
  CountReport rep;
  rep.value = detail::product_energy(ring, ua, ub);
  const double A = static_cast<double>(a.length), B = static_cast<double>(b.length);
  rep.bound_value = A * A * B * B / static_cast<double>(ring.q()) + A * B;
  rep.ratio = safe_ratio(static_cast<double>(rep.value), rep.bound_value);
  return rep;
}

EnergyIdentity energy_character_identity(const ResidueRing& ring, const CharacterTable& table,
                                         const IntervalSet& a, const IntervalSet& b) {
  auto ua = detail::unit_residues(ring, a);
  auto ub = detail::unit_residues(ring, b);
  const std::int64_t count = table.char_count();
  std::vector<double> per_char(static_cast<std::size_t>(count), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t chi = 1; chi < count; ++chi) {
    auto vals = table.values(chi);
    cplx sa = 0.0, sb = 0.0;
    for (auto x : ua) sa += vals[x];
    for (auto y : ub) sb += vals[y];
    per_char[chi] = std::norm(sa) * std::norm(sb);
  }
  double rest = 0.0;
  for (double v : per_char) rest += v;

  const double phi = static_cast<double>(ring.phi());
  const double au = static_cast<double>(ua.size()), bu = static_cast<double>(ub.size());
  EnergyIdentity id;
  id.principal = au * au * bu * bu / phi;
  id.remainder = rest / phi;
  id.energy = id.principal + id.remainder;
  return id;
}

double reciprocal_mod_reference(std::int64_t q, int r, std::int64_t k) {
  const double K = static_cast<double>(k), Q = static_cast<double>(q);
  if (r == 1) return K;
  if (r == 2) return std::pow(K, 3.5) / std::sqrt(Q) + K * K;
  return std::pow(K, 2.0 * r) / Q + std::pow(K, static_cast<double>(r));
}

CountReport reciprocal_count_mod(const ResidueRing& ring, int r, std::int64_t k) {
  check_k(ring, r, k);
  const std::int64_t q = ring.q();
  auto support = inverses_up_to(ring, k);
  const double bits = 2.0 * r * std::log2(std::max<double>(1.0, static_cast<double>(support.size())));
  if (bits >= 63.0) throw error(errc::budget_exceeded, "J_r(q;K) may exceed 64-bit range");

  const std::uint64_t total = detail::r_fold_energy(q, r, support);

  CountReport rep;
  rep.value = total;
  rep.bound_value = reciprocal_mod_reference(q, r, k);
  rep.ratio = safe_ratio(static_cast<double>(total), rep.bound_value);
  return rep;
}

std::uint64_t reciprocal_tally_naive(const ResidueRing& ring, int r, std::int64_t k) {
  check_k(ring, r, k);
  const std::int64_t q = ring.q();
  auto inv = inverses_up_to(ring, k);
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(q), 0);
  if (inv.empty()) return 0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  while (true) {
    std::int64_t s = 0;
    for (auto i : idx) s = (s + inv[i]) % q;
    ++tally[s];
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == inv.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  std::uint64_t total = 0;
  for (auto c : tally) total += c * c;
  return total;
}

std::pair<double, std::uint64_t> reciprocal_moment_identity(const ResidueRing& ring, int r, std::int64_t k) {
  auto exact = reciprocal_count_mod(ring, r, k).value;
  std::vector<cplx> indicator(static_cast<std::size_t>(ring.q()), 0.0);
  for (auto s : inverses_up_to(ring, k)) indicator[s] = 1.0;
  auto spectrum = cyclic_dft(ring, indicator, Direction::forward);
  double total = 0.0;
  for (const auto& g : spectrum) total += std::pow(std::norm(g), r);
  return {total / static_cast<double>(ring.q()), exact};
}

CountReport reciprocal_count_rational(int r, std::int64_t k, double budget) {
  if (r < 1 || k < 1) throw error(errc::invalid_argument, "need r >= 1 and K >= 1");
  if (static_cast<double>(r) * std::pow(static_cast<double>(k), r) > budget)
    throw error(errc::budget_exceeded, "r K^r = " + std::to_string(r * std::pow(double(k), r)));

  struct Entry {
    std::uint64_t num, den, weight;
  };
  std::vector<Entry> entries;

  // Nondecreasing tuples x_1 <= ... <= x_r, weighted by the number of
  // orderings. The running sum stays reduced with a positive denominator.
  std::vector<std::uint64_t> factorial(static_cast<std::size_t>(r) + 1, 1);
  for (int i = 1; i <= r; ++i) factorial[i] = factorial[i - 1] * static_cast<std::uint64_t>(i);

  std::vector<std::int64_t> tuple(static_cast<std::size_t>(r), 1);
  while (true) {
    std::uint64_t num = 0, den = 1, perms = factorial[r];
    int run = 0;
    for (int i = 0; i < r; ++i) {
      const auto x = static_cast<std::uint64_t>(tuple[i]);
      unsigned __int128 n = static_cast<unsigned __int128>(num) * x + den;
      unsigned __int128 d = static_cast<unsigned __int128>(den) * x;
      unsigned __int128 a = n, b = d;
      while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
      }
      n /= a;
      d /= a;
      if (d > UINT64_MAX || n > UINT64_MAX)
        throw error(errc::budget_exceeded, "fraction exceeds 64-bit range");
      num = static_cast<std::uint64_t>(n);
      den = static_cast<std::uint64_t>(d);
      run = (i > 0 && tuple[i] == tuple[i - 1]) ? run + 1 : 1;
      perms /= static_cast<std::uint64_t>(run);
    }
    entries.push_back({num, den, perms});

    int pos = r - 1;
    while (pos >= 0 && tuple[pos] == k) --pos;
    if (pos < 0) break;
    ++tuple[pos];
    for (int i = pos + 1; i < r; ++i) tuple[i] = tuple[pos];
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.num, a.den) < std::tie(b.num, b.den);
  });
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::uint64_t group = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].num == entries[i].num && entries[j].den == entries[i].den; ++j)
      group += entries[j].weight;
    total += group * group;
    i = j;
  }

  CountReport rep;
  rep.value = total;
  rep.bound_value = std::pow(static_cast<double>(k), r);
  rep.ratio = safe_ratio(static_cast<double>(total), rep.bound_value);
  return rep;
}

AverageReciprocal average_reciprocal_sweep(std::int64_t big_q, int r, std::int64_t k) {
  if (k < 1 || k > big_q)
    throw error(errc::k_out_of_range, "need 1 <= K <= Q");
  const std::int64_t count = big_q + 1;
  std::vector<std::uint64_t> per_q(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    ResidueRing ring(big_q + i);
    per_q[i] = reciprocal_count_mod(ring, r, k).value;
  }
  AverageReciprocal out;
  out.big_q = big_q;
  out.r = r;
  out.k = k;
  for (auto v : per_q) out.total += v;
  const double Q = static_cast<double>(big_q), K = static_cast<double>(k);
  out.average = static_cast<double>(out.total) / Q;
  out.reference = std::pow(K, 2.0 * r) / Q + std::pow(K, static_cast<double>(r));
  out.ratio = safe_ratio(out.average, out.reference);
  return out;
}

}  // namespace kforms
