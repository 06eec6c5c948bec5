#include <random>

#include "doctest.h"
#include "kforms/dft.hpp"
#include "kforms/error.hpp"

using namespace kforms;

namespace {

std::vector<cplx> random_vector(std::int64_t q, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> f(static_cast<std::size_t>(q));
  for (auto& v : f) v = {u(gen), u(gen)};
  return f;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("delta and constant vectors") {
  for (std::int64_t q : {2, 7, 12, 97, 360, 1009}) {
    auto ring = build_ring(q);
    std::vector<cplx> delta(static_cast<std::size_t>(q), 0.0);
    delta[0] = 1.0;
    for (const auto& v : cyclic_dft(ring, delta, Direction::forward)) CHECK(std::abs(v - 1.0) < 1e-12);

    std::vector<cplx> ones(static_cast<std::size_t>(q), 1.0);
    auto f = cyclic_dft(ring, ones, Direction::forward);
    CHECK(std::abs(f[0] - static_cast<double>(q)) < 1e-9 * q);
    for (std::int64_t t = 1; t < q; ++t) CHECK(std::abs(f[t]) < 1e-9 * q);
  }
}

TEST_CASE("sign convention: forward uses e_q(+tz)") {
  auto ring = build_ring(5);
  std::vector<cplx> f(5, 0.0);
  f[1] = 1.0;
  auto naive = dft_naive(ring, f, Direction::forward);
  auto fast = dft_fast(f, Direction::forward);
  for (std::int64_t t = 0; t < 5; ++t) {
    CHECK(std::abs(naive[t] - eq_eval(ring, t)) < 1e-14);
    CHECK(std::abs(fast[t] - eq_eval(ring, t)) < 1e-14);
  }
}

TEST_CASE("fast transform matches the quadratic reference for q <= 4096") {
  std::vector<std::int64_t> qs{2, 3, 64, 65, 97, 128, 360, 1000, 1021, 2048, 4093, 4096};
  for (std::int64_t q : qs) {
    auto ring = build_ring(q);
    auto f = random_vector(q, static_cast<std::uint64_t>(q));
    for (auto dir : {Direction::forward, Direction::inverse}) {
      auto a = dft_naive(ring, f, dir);
      auto b = dft_fast(f, dir);
      CHECK(max_abs_diff(a, b) <= 1e-9 * static_cast<double>(q));
    }
  }
}

TEST_CASE("round trip and Parseval") {
  for (std::int64_t q : {5, 63, 64, 65, 499, 4097, 10007}) {
    auto ring = build_ring(q);
    auto f = random_vector(q, 99 + static_cast<std::uint64_t>(q));
    auto big_f = cyclic_dft(ring, f, Direction::forward);
    auto back = cyclic_dft(ring, big_f, Direction::inverse);
    double fmax = 0.0, e_in = 0.0, e_out = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      fmax = std::max(fmax, std::abs(f[i]));
      e_in += std::norm(f[i]);
      e_out += std::norm(big_f[i]);
    }
    CHECK(max_abs_diff(back, f) <= 1e-9 * static_cast<double>(q) * fmax);
    CHECK(std::abs(e_out - static_cast<double>(q) * e_in) <= 1e-9 * e_out);
  }
}

TEST_CASE("length mismatch") {
  auto ring = build_ring(7);
  std::vector<cplx> f(6, 1.0);
  try {
    cyclic_dft(ring, f, Direction::forward);
    FAIL("expected length-mismatch");
  } catch (const kforms::error& e) {
    CHECK(e.code() == errc::length_mismatch);
  }
}
