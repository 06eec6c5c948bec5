#include <random>

#include "doctest.h"
#include "kforms/error.hpp"
#include "kforms/kloosterman.hpp"
#include "kforms/trilinear.hpp"
#include "oracles.hpp"

using namespace kforms;

namespace {

TrilinearInstance instance(std::int64_t q, IntervalSet l, IntervalSet m, IntervalSet n, WeightMode mode,
                           std::uint64_t seed = 1) {
  auto ring = std::make_shared<const ResidueRing>(q);
  return make_instance(ring, make_weights(*ring, l, mode, seed, m, n), m, n);
}

}  // namespace

TEST_CASE("weight models") {
  auto ring = build_ring(12);
  SUBCASE("ones on the units") {
    auto w = make_weights(ring, IntervalSet(0, 12), WeightMode::ones, 0);
    for (std::int64_t l = 1; l <= 12; ++l) CHECK(w.at(l) == cplx(std::gcd(l, 12) == 1 ? 1.0 : 0.0));
  }
  SUBCASE("rademacher and phase") {
    auto big = build_ring(210);
    auto rad = make_weights(big, IntervalSet(-20, 300), WeightMode::rademacher, 9);
    auto ph = make_weights(big, IntervalSet(-20, 300), WeightMode::phase, 9);
    for (std::int64_t l = -19; l <= 280; ++l) {
      const cplx a = rad.at(l);
      if (big.is_unit(l))
        CHECK((a == cplx(1.0) || a == cplx(-1.0)));
      else
        CHECK(a == cplx(0.0));
      CHECK(std::abs(ph.at(l)) == doctest::Approx(big.is_unit(l) ? 1.0 : 0.0));
    }
    CHECK_NOTHROW(validate_weights(big, rad));
    CHECK_NOTHROW(validate_weights(big, ph));
    // Deterministic in the seed.
    auto again = make_weights(big, IntervalSet(-20, 300), WeightMode::phase, 9);
    CHECK(again.weights == ph.weights);
    CHECK(make_weights(big, IntervalSet(-20, 300), WeightMode::phase, 10).weights != ph.weights);
  }
  SUBCASE("extremal needs M and N") {
    CHECK_THROWS_AS(make_weights(ring, IntervalSet(0, 5), WeightMode::extremal, 0), kforms::error);
  }
  SUBCASE("invalid weights are rejected") {
    WeightVector w{IntervalSet(0, 3), {1.0, 2.0, 0.0}};
    CHECK_THROWS_AS(validate_weights(ring, w), kforms::error);
    WeightVector off{IntervalSet(0, 3), {1.0, 1.0, 0.0}};  // l = 2 is not a unit mod 12
    CHECK_THROWS_AS(validate_weights(ring, off), kforms::error);
  }
}

TEST_CASE("interval_phase_sum") {
  auto r4 = build_ring(4);
  CHECK(interval_phase_sum(r4, IntervalSet(0, 2), 0) == cplx(2.0));
  CHECK(std::abs(interval_phase_sum(r4, IntervalSet(0, 2), 1) - cplx(-1.0, 1.0)) < 1e-14);
  std::mt19937_64 gen(31);
  for (int it = 0; it < 10000; ++it) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(gen() % 500);
    auto ring = build_ring(q);
    const auto start = static_cast<std::int64_t>(gen() % 2000) - 1000;
    const auto len = 1 + static_cast<std::int64_t>(gen() % 60);
    const auto x = static_cast<std::int64_t>(gen() % 4000) - 2000;
    const cplx v = interval_phase_sum(ring, IntervalSet(start, len), x);
    REQUIRE(std::abs(v - oracle::interval_sum_direct(q, start, len, x)) <= 1e-10 * static_cast<double>(len));
    const auto dist = centered_dist(ring, x);
    const double cap = dist == 0 ? static_cast<double>(len)
                                 : std::min<double>(static_cast<double>(len), static_cast<double>(q) / dist);
    REQUIRE(std::abs(v) <= cap * (1.0 + 1e-12));
  }
}

TEST_CASE("trilinear_naive small cases") {
  auto one = instance(5, IntervalSet(0, 1), IntervalSet(0, 1), IntervalSet(0, 1), WeightMode::ones);
  CHECK(std::abs(trilinear_naive(one) - cplx(2.5450850, 0.5020285)) < 1e-6);
  CHECK(std::abs(trilinear_fast(one) - cplx(2.5450850, 0.5020285)) < 1e-6);

  auto ring = std::make_shared<const ResidueRing>(11);
  WeightVector zero{IntervalSet(0, 4), std::vector<cplx>(4, 0.0)};
  auto z = make_instance(ring, zero, IntervalSet(0, 3), IntervalSet(2, 3));
  CHECK(trilinear_naive(z) == cplx(0.0));
  CHECK(trilinear_fast(z) == cplx(0.0));

  // A complete residue system for m kills every term.
  auto full = instance(9, IntervalSet(0, 4), IntervalSet(3, 9), IntervalSet(0, 2), WeightMode::phase);
  CHECK(std::abs(trilinear_naive(full)) < 1e-9 * 4 * 9 * 2 * 9);
  CHECK(std::abs(trilinear_fast(full)) < 1e-9 * 4 * 9 * 2 * 9);
}

TEST_CASE("trilinear_fast agrees with the naive oracle") {
  std::mt19937_64 gen(41);
  for (int it = 0; it < 25; ++it) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(gen() % 120);
    auto rnd_interval = [&] {
      return IntervalSet(static_cast<std::int64_t>(gen() % 400) - 200, 1 + static_cast<std::int64_t>(gen() % 6));
    };
    const auto l = rnd_interval(), m = rnd_interval(), n = rnd_interval();
    const auto mode = static_cast<WeightMode>(gen() % 4);
    auto inst = instance(q, l, m, n, mode, gen());
    const double tol = 1e-7 * static_cast<double>(l.length * m.length * n.length * q);
    REQUIRE(std::abs(trilinear_fast(inst) - trilinear_naive(inst)) <= tol);
  }
}

TEST_CASE("linearity in the weights") {
  auto ring = std::make_shared<const ResidueRing>(97);
  const IntervalSet l(5, 20), m(-3, 7), n(40, 9);
  auto a = make_weights(*ring, l, WeightMode::phase, 1);
  auto b = make_weights(*ring, l, WeightMode::rademacher, 2);
  WeightVector half_sum{l, std::vector<cplx>(20)};
  WeightVector scaled{l, std::vector<cplx>(20)};
  const cplx c(0.6, -0.3);
  for (int i = 0; i < 20; ++i) {
    half_sum.weights[i] = 0.5 * (a.weights[i] + b.weights[i]);
    scaled.weights[i] = c * a.weights[i];
  }
  const cplx sa = trilinear_fast(make_instance(ring, a, m, n));
  const cplx sb = trilinear_fast(make_instance(ring, b, m, n));
  const double tol = 1e-9 * 20 * 7 * 9 * 97;
  CHECK(std::abs(trilinear_fast(make_instance(ring, half_sum, m, n)) - 0.5 * (sa + sb)) <= tol);
  CHECK(std::abs(trilinear_fast(make_instance(ring, scaled, m, n)) - c * sa) <= tol);
}

TEST_CASE("conjugation: conj(S) is the form with conj(alpha) at q - l") {
  const std::int64_t q = 31;
  auto ring = std::make_shared<const ResidueRing>(q);
  const IntervalSet l(0, 12), m(2, 5), n(-4, 6);
  auto w = make_weights(*ring, l, WeightMode::phase, 77);
  const cplx s = trilinear_fast(make_instance(ring, w, m, n));
  cplx rebuilt = 0.0;
  for (std::int64_t ll = l.first(); ll <= l.last(); ++ll)
    for (std::int64_t mm = m.first(); mm <= m.last(); ++mm)
      for (std::int64_t nn = n.first(); nn <= n.last(); ++nn)
        rebuilt += std::conj(w.at(ll)) * double_fast(*ring, q - ll, mm, nn);
  CHECK(std::abs(std::conj(s) - rebuilt) <= 1e-8 * 12 * 5 * 6 * q);
}

TEST_CASE("weighted double sums") {
  auto r7 = build_ring(7);
  std::vector<cplx> ones(7, 1.0);
  CHECK(std::abs(weighted_double_sum(r7, 1, ones, ones) + 6.0) < 1e-9);
  CHECK(std::abs(weighted_double_sum(r7, 1, std::vector<cplx>(7, 0.0), ones)) < 1e-12);
  for (std::int64_t q : {13, 60, 101}) {
    auto ring = build_ring(q);
    for (auto [l, m, n] : {std::tuple{1, 2, 3}, std::tuple{5, 0, 7}, std::tuple{0, 4, 4}}) {
      std::vector<cplx> eta(static_cast<std::size_t>(q)), kappa(static_cast<std::size_t>(q));
      for (std::int64_t x : ring.units()) {
        eta[x] = eq_eval(ring, m * ring.inv_unchecked(x));
        kappa[x] = eq_eval(ring, n * ring.inv_unchecked(x));
      }
      REQUIRE(std::abs(weighted_double_sum(ring, l, eta, kappa) - double_naive(ring, l, m, n)) <=
              1e-8 * ring.phi() * ring.phi());
    }
  }
  std::vector<cplx> big(7, 2.0);
  CHECK_THROWS_AS(weighted_double_sum(r7, 1, big, ones), kforms::error);
}

TEST_CASE("theorem1_bounds") {
  SUBCASE("triangle inequality against every |K_q(l, m, n)|") {
    auto inst = instance(53, IntervalSet(0, 6), IntervalSet(3, 5), IntervalSet(1, 4), WeightMode::phase, 5);
    auto rep = theorem1_bounds(inst);
    CHECK(rep.measured <= rep.triangle * (1 + 1e-12));
    CHECK(rep.triangle <= full_triangle_bound(inst) * (1 + 1e-12));
    CHECK(rep.measured == doctest::Approx(std::abs(trilinear_naive(inst))).epsilon(1e-9));
    CHECK(rep.bound1 == doctest::Approx((6 + std::sqrt(30.0)) * 2.0 * std::pow(53.0, 1.5)));
    CHECK(rep.trivial == doctest::Approx(6.0 * 5 * 4 * 53));
    CHECK(rep.min_bound == std::min(rep.bound1, rep.bound2));
  }
  SUBCASE("extremal weights attain the triangle bound") {
    auto inst = instance(499, IntervalSet(0, 22), IntervalSet(0, 22), IntervalSet(0, 22), WeightMode::extremal);
    auto rep = theorem1_bounds(inst);
    CHECK(rep.measured == doctest::Approx(rep.triangle).epsilon(1e-10));
    CHECK(rep.ratio_min > 0.0);
  }
  SUBCASE("zero weights") {
    auto ring = std::make_shared<const ResidueRing>(13);
    auto inst = make_instance(ring, WeightVector{IntervalSet(0, 3), std::vector<cplx>(3, 0.0)}, IntervalSet(0, 2),
                              IntervalSet(0, 2));
    auto rep = theorem1_bounds(inst);
    CHECK(rep.measured == 0.0);
    CHECK(rep.ratio_min == 0.0);
    CHECK(rep.ratio_trivial == 0.0);
  }
}
