#include "kforms/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "kforms/energy_kernel.hpp"
#include "kforms/error.hpp"

namespace kforms {
namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

std::int64_t primitive_root_mod_p(std::int64_t p) {
  if (p == 2) return 1;
  auto fs = factorize(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [r, e] : fs)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

CyclicFactor cyclic_from_generator(std::int64_t p, std::int64_t pe, std::int64_t g, std::int64_t order) {
  CyclicFactor f{p, pe, g, order, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < order; ++k) {
    f.log[x] = static_cast<std::int32_t>(k);
    x = static_cast<std::int64_t>(static_cast<__int128>(x) * g % pe);
  }
  return f;
}

}  // namespace

CharacterTable::CharacterTable(const ResidueRing& ring) : q_(ring.q()) {
  unit_mask_.assign(ring.unit_mask().begin(), ring.unit_mask().end());

  for (auto [p, e] : ring.factors()) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p != 2) {
      std::int64_t g = primitive_root_mod_p(p);
      if (e > 1 && powmod(g, p - 1, p * p) == 1) g += p;
      factors_.push_back(cyclic_from_generator(p, pe, g, pe / p * (p - 1)));
    } else if (e == 2) {
      factors_.push_back(cyclic_from_generator(2, 4, 3, 2));
    } else if (e >= 3) {
      // x = (-1)^a 5^b mod 2^e
      const std::int64_t half = pe / 4;
      CyclicFactor sign{2, pe, pe - 1, 2, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
      CyclicFactor five{2, pe, 5, half, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
      std::int64_t x = 1;
      for (std::int64_t b = 0; b < half; ++b) {
        sign.log[x] = 0;
        five.log[x] = static_cast<std::int32_t>(b);
        sign.log[pe - x] = 1;
        five.log[pe - x] = static_cast<std::int32_t>(b);
        x = x * 5 % pe;
      }
      factors_.push_back(std::move(sign));
      factors_.push_back(std::move(five));
    }
  }

  for (const auto& f : factors_) {
    char_count_ *= f.order;
    exponent_ = std::lcm(exponent_, f.order);
  }
  roots_.resize(static_cast<std::size_t>(exponent_));
  for (std::int64_t k = 0; k < exponent_; ++k)
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(exponent_));
}

std::vector<std::int64_t> CharacterTable::digits(std::int64_t chi_index) const {
  if (chi_index < 0 || chi_index >= char_count_)
    throw error(errc::index_out_of_range, std::to_string(chi_index));
  std::vector<std::int64_t> d(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    d[i] = chi_index % factors_[i].order;
    chi_index /= factors_[i].order;
  }
  return d;
}

std::int64_t CharacterTable::phase(std::int64_t chi_index, std::int64_t x) const {
  auto d = digits(chi_index);
  std::int64_t r = ((x % q_) + q_) % q_;
  if (!unit_mask_[r]) return -1;
  std::int64_t ph = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    ph += d[i] * f.log[r % f.modulus] % f.order * (exponent_ / f.order);
  }
  return ph % exponent_;
}

cplx CharacterTable::value(std::int64_t chi_index, std::int64_t x) const {
  std::int64_t ph = phase(chi_index, x);
  return ph < 0 ? cplx(0.0) : roots_[ph];
}

std::vector<cplx> CharacterTable::values(std::int64_t chi_index) const {
  auto d = digits(chi_index);
  std::vector<cplx> out(static_cast<std::size_t>(q_), 0.0);
  for (std::int64_t r = 1; r < q_; ++r) {
    if (!unit_mask_[r]) continue;
    std::int64_t ph = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      ph += d[i] * f.log[r % f.modulus] % f.order * (exponent_ / f.order);
    }
    out[r] = roots_[ph % exponent_];
  }
  return out;
}

CharacterTable build_characters(const ResidueRing& ring) { return CharacterTable(ring); }

cplx eval_character(const CharacterTable& table, std::int64_t chi_index, std::int64_t x) {
  return table.value(chi_index, x);
}

double fourth_moment(const CharacterTable& table, const IntervalSet& interval) {
  const std::int64_t q = table.q();
  // Residue multiplicities of the interval, so each character costs O(q).
  std::vector<std::int64_t> mult(static_cast<std::size_t>(q), 0);
  for (std::int64_t z = interval.first(); z <= interval.last(); ++z) ++mult[((z % q) + q) % q];

  const std::int64_t count = table.char_count();
  std::vector<double> per_char(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t chi = 0; chi < count; ++chi) {
    auto vals = table.values(chi);
    cplx s = 0.0;
    for (std::int64_t r = 0; r < q; ++r)
      if (mult[r] != 0) s += static_cast<double>(mult[r]) * vals[r];
    double a2 = std::norm(s);
    per_char[chi] = a2 * a2;
  }
  // Fixed-order reduction keeps the result independent of thread count.
  double total = 0.0;
  for (double v : per_char) total += v;
  return total;
}

std::uint64_t fourth_moment_by_count(const ResidueRing& ring, const IntervalSet& interval) {
  auto u = detail::unit_residues(ring, interval);
  return static_cast<std::uint64_t>(ring.phi()) * detail::product_energy(ring, u, u);
}

std::vector<std::uint64_t> fourth_moment_prefixes(const ResidueRing& ring, std::int64_t k,
                                                  std::int64_t max_length) {
  const std::int64_t q = ring.q();
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(max_length));
  std::vector<std::uint32_t> count(static_cast<std::size_t>(q), 0);
  std::vector<std::int64_t> members;
  std::uint64_t energy = 0;
  auto add = [&](std::int64_t s) {
    energy += 2 * static_cast<std::uint64_t>(count[s]) + 1;
    ++count[s];
  };
  for (std::int64_t h = 1; h <= max_length; ++h) {
    std::int64_t z = ring.reduce(k + h);
    if (ring.unit_mask()[z]) {
      for (std::int64_t x : members) {
        std::int64_t s = static_cast<std::int64_t>(static_cast<__int128>(x) * z % q);
        add(s);
        add(s);
      }
      add(static_cast<std::int64_t>(static_cast<__int128>(z) * z % q));
      members.push_back(z);
    }
    out.push_back(static_cast<std::uint64_t>(ring.phi()) * energy);
  }
  return out;
}

std::pair<double, double> moment_identity_check(const CharacterTable& table, const ResidueRing& ring,
                                                const IntervalSet& interval) {
  return {fourth_moment(table, interval), static_cast<double>(fourth_moment_by_count(ring, interval))};
}

}  // namespace kforms
