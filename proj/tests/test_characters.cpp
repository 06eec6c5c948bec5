#include <random>

#include "doctest.h"
#include "kforms/characters.hpp"
#include "kforms/congruence.hpp"
#include "kforms/error.hpp"
#include "oracles.hpp"

using namespace kforms;

namespace {

// Exponent of (Z/q)^* by brute-force element orders.
std::int64_t group_exponent(std::int64_t q) {
  std::int64_t ex = 1;
  for (auto x : oracle::units(q)) {
    std::int64_t k = 1, y = x % q;
    while (y != 1 % q) {
      y = y * x % q;
      ++k;
    }
    ex = std::lcm(ex, k);
  }
  return ex;
}

}  // namespace

TEST_CASE("group structure") {
  SUBCASE("q = 5 is cyclic of order 4") {
    auto t = build_characters(build_ring(5));
    CHECK(t.char_count() == 4);
    REQUIRE(t.factors().size() == 1);
    CHECK(t.factors()[0].order == 4);
  }
  SUBCASE("q = 8 is C2 x C2") {
    auto t = build_characters(build_ring(8));
    CHECK(t.char_count() == 4);
    REQUIRE(t.factors().size() == 2);
    CHECK(t.factors()[0].order == 2);
    CHECK(t.factors()[1].order == 2);
    CHECK(group_exponent(8) == 2);
  }
  SUBCASE("q = 2 has only the principal character") {
    auto t = build_characters(build_ring(2));
    CHECK(t.char_count() == 1);
    CHECK(eval_character(t, 0, 1) == cplx(1.0));
  }
  SUBCASE("count and exponent match enumeration for q <= 300") {
    for (std::int64_t q = 2; q <= 300; ++q) {
      auto t = build_characters(build_ring(q));
      REQUIRE(t.char_count() == oracle::phi(q));
      REQUIRE(t.exponent() == group_exponent(q));
    }
  }
}

TEST_CASE("character values") {
  auto t = build_characters(build_ring(5));
  // Index 1 sends the primitive root 2 to i.
  CHECK(t.factors()[0].generator == 2);
  CHECK(std::abs(eval_character(t, 1, 2) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(eval_character(t, 1, 4) - cplx(-1, 0)) < 1e-15);

  auto t12 = build_characters(build_ring(12));
  for (std::int64_t chi = 0; chi < t12.char_count(); ++chi) {
    CHECK(eval_character(t12, chi, 6) == cplx(0.0));
    CHECK(eval_character(t12, chi, 0) == cplx(0.0));
  }
  for (auto x : {1, 5, 7, 11}) CHECK(eval_character(t12, 0, x) == cplx(1.0));

  try {
    eval_character(t12, 4, 1);
    FAIL("expected index-out-of-range");
  } catch (const kforms::error& e) {
    CHECK(e.code() == errc::index_out_of_range);
  }
}

TEST_CASE("orthogonality over residues and between characters") {
  for (std::int64_t q : {2, 3, 4, 8, 9, 12, 16, 27, 32, 45, 64, 97, 120, 128, 210, 243, 256, 300}) {
    auto t = build_characters(build_ring(q));
    std::vector<std::vector<cplx>> all;
    for (std::int64_t chi = 0; chi < t.char_count(); ++chi) {
      auto v = t.values(chi);
      cplx s = 0.0;
      for (auto x : v) s += x;
      if (chi == 0)
        REQUIRE(std::abs(s - static_cast<double>(oracle::phi(q))) <= 1e-9 * q);
      else
        REQUIRE(std::abs(s) <= 1e-9 * q);
      if (q <= 64) all.push_back(std::move(v));
    }
    // Distinct characters are orthogonal, so the enumeration has no repeats.
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = a + 1; b < all.size(); ++b) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < all[a].size(); ++x) s += all[a][x] * std::conj(all[b][x]);
        REQUIRE(std::abs(s) <= 1e-9 * q);
      }
  }
}

TEST_CASE("multiplicativity on random inputs") {
  std::mt19937_64 gen(2024);
  int checked = 0;
  while (checked < 1000) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(gen() % 400);
    auto ring = build_ring(q);
    auto t = build_characters(ring);
    const auto u = ring.units();
    const auto x = u[gen() % u.size()], y = u[gen() % u.size()];
    const auto chi = static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(t.char_count()));
    REQUIRE(std::abs(t.value(chi, x * y % q) - t.value(chi, x) * t.value(chi, y)) <= 1e-12);
    ++checked;
  }
}

TEST_CASE("fourth moment examples") {
  auto r5 = build_ring(5);
  auto t5 = build_characters(r5);
  CHECK(fourth_moment(t5, IntervalSet(0, 2)) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(fourth_moment(t5, IntervalSet(0, 1)) == doctest::Approx(4.0).epsilon(1e-12));
  auto r2 = build_ring(2);
  CHECK(fourth_moment(build_characters(r2), IntervalSet(0, 1)) == doctest::Approx(1.0));
  CHECK(fourth_moment_by_count(r5, IntervalSet(0, 2)) == 24);
}

TEST_CASE("moment identity against brute-force quadruples") {
  SUBCASE("q = 7, full period") {
    auto ring = build_ring(7);
    auto [moment, counted] = moment_identity_check(build_characters(ring), ring, IntervalSet(0, 7));
    const double brute = 6.0 * static_cast<double>(oracle::energy(7, 0, 7, 0, 7));
    CHECK(counted == brute);
    CHECK(moment == doctest::Approx(brute).epsilon(1e-9));
  }
  SUBCASE("H = 1 at a unit") {
    auto ring = build_ring(30);
    auto [moment, counted] = moment_identity_check(build_characters(ring), ring, IntervalSet(6, 1));
    CHECK(moment == doctest::Approx(8.0));
    CHECK(counted == 8.0);
  }
  SUBCASE("random q <= 300 with 20 intervals each") {
    std::mt19937_64 gen(5);
    for (std::int64_t q : {11, 36, 64, 101, 150, 210, 256, 299}) {
      auto ring = build_ring(q);
      auto t = build_characters(ring);
      for (int it = 0; it < 20; ++it) {
        const auto k = static_cast<std::int64_t>(gen() % 1000) - 500;
        const auto h = 1 + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(q + 10));
        auto [a, b] = moment_identity_check(t, ring, IntervalSet(k, h));
        REQUIRE(std::abs(a - b) <= 1e-6 * std::max(1.0, b));
      }
    }
  }
}

TEST_CASE("prefix moments equal per-interval counts") {
  for (std::int64_t q : {10, 97, 120}) {
    auto ring = build_ring(q);
    const auto pref = fourth_moment_prefixes(ring, 3, q + 5);
    for (std::int64_t h = 1; h <= q + 5; h += 7) REQUIRE(pref[h - 1] == fourth_moment_by_count(ring, IntervalSet(3, h)));
  }
}
