#include "kforms/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>

#include "kforms/characters.hpp"
#include "kforms/congruence.hpp"
#include "kforms/error.hpp"

namespace kforms {
namespace {

using Clock = std::chrono::steady_clock;

struct Item {
  std::vector<BoundReport> reports;
  bool done = false;
};

// Runs fn(0..count-1) across threads. Items that would start after the
// wall-clock budget are skipped; the result keeps the completed prefix so the
// output order never depends on scheduling.
std::pair<std::vector<BoundReport>, bool> run_items(std::int64_t count,
                                                    const std::function<std::vector<BoundReport>(std::int64_t)>& fn,
                                                    const SweepOptions& opts) {
  std::vector<Item> items(static_cast<std::size_t>(count));
  const auto start = Clock::now();
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    if (failed.load()) continue;
    if (opts.budget_ms > 0.0) {
      const double elapsed = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      if (elapsed > opts.budget_ms) continue;
    }
    const auto t0 = Clock::now();
    try {
      items[i].reports = fn(i);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
      failed = true;
      continue;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    for (auto& r : items[i].reports) r.runtime_ms = opts.timing ? ms : 0;
    items[i].done = true;
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BoundReport> out;
  bool truncated = false;
  for (auto& it : items) {
    if (!it.done) {
      truncated = true;
      break;
    }
    for (auto& r : it.reports) out.push_back(std::move(r));
  }
  return {std::move(out), truncated};
}

double param_number(const BoundReport& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key)
      if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::numeric_limits<double>::quiet_NaN();
}

double fitted_against(const std::vector<BoundReport>& reports, const std::string& key) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : reports) {
    const double x = param_number(r, key);
    if (x > 0.0 && r.measured > 0.0) pts.emplace_back(x, r.measured);
  }
  try {
    return fit_exponent(pts);
  } catch (const error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

SweepResult finish(std::vector<std::string> keys, std::pair<std::vector<BoundReport>, bool> run, double threshold,
                   const std::string& fit_key) {
  SweepResult res;
  res.param_keys = std::move(keys);
  res.reports = std::move(run.first);
  res.truncated = run.second;
  res.threshold = threshold;
  res.exceptions = count_exceptions(res.reports, threshold);
  res.fitted_exponent = fitted_against(res.reports, fit_key);
  return res;
}

ParamList interval_params(const IntervalSet& l, const IntervalSet& m, const IntervalSet& n) {
  auto d = [](std::int64_t v) { return ParamValue(static_cast<double>(v)); };
  return {{"L_start", d(l.start)}, {"L", d(l.length)}, {"M_start", d(m.start)},
          {"M", d(m.length)},      {"N_start", d(n.start)}, {"N", d(n.length)}};
}

std::vector<std::string> keys_of(const ParamList& p) {
  std::vector<std::string> k;
  for (const auto& [key, v] : p) k.push_back(key);
  return k;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    throw error(errc::invalid_grid, "bad grid value '" + s + "'");
  }
  if (pos != s.size()) throw error(errc::invalid_grid, "bad grid value '" + s + "'");
  return v;
}

double dbl(std::int64_t v) { return static_cast<double>(v); }

}  // namespace

std::vector<std::int64_t> parse_grid(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    std::int64_t step = 1;
    std::string hi_text = item.substr(dots + 2);
    if (auto colon = hi_text.find(':'); colon != std::string::npos) {
      step = parse_int(hi_text.substr(colon + 1));
      hi_text = hi_text.substr(0, colon);
    }
    const std::int64_t lo = parse_int(item.substr(0, dots)), hi = parse_int(hi_text);
    if (step < 1 || hi < lo) throw error(errc::invalid_grid, "bad range '" + item + "'");
    for (std::int64_t v = lo; v <= hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw error(errc::invalid_grid, "empty grid '" + text + "'");
  return out;
}

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

SweepResult verify_thm1_sweep(const std::vector<std::int64_t>& q_list, const IntervalSet& l, const IntervalSet& m,
                              const IntervalSet& n, WeightMode mode, std::uint64_t seed, double threshold,
                              const SweepOptions& opts) {
  for (auto q : q_list) {
    if (q < 2) throw error(errc::modulus_too_small, "q = " + std::to_string(q));
    if (l.length > q || m.length > q || n.length > q)
      throw error(errc::invalid_argument, "L, M, N must not exceed q = " + std::to_string(q));
    if (dbl(l.length) * dbl(q) > opts.work_budget)
      throw error(errc::dimension_too_large, "L * q = " + std::to_string(l.length * q));
  }
  ParamList head{{"q", 0.0}};
  auto ip = interval_params(l, m, n);
  head.insert(head.end(), ip.begin(), ip.end());
  head.emplace_back("weights", std::string(weight_mode_name(mode)));
  head.emplace_back("seed", dbl(static_cast<std::int64_t>(seed)));

  auto run = run_items(
      static_cast<std::int64_t>(q_list.size()),
      [&](std::int64_t idx) {
        const std::int64_t q = q_list[idx];
        auto ring = std::make_shared<const ResidueRing>(q);
        auto w = make_weights(*ring, l, mode, seed, m, n);
        auto inst = make_instance(ring, std::move(w), m, n);
        const auto t1 = theorem1_bounds(inst);
        ParamList p = head;
        p[0].second = dbl(q);
        return std::vector<BoundReport>{make_report(std::move(p), t1.measured, t1.min_bound)};
      },
      opts);
  return finish(keys_of(head), std::move(run), threshold, "q");
}

Thm2Result verify_thm2_sweep(std::int64_t big_q, int r, const IntervalSet& l, const IntervalSet& m,
                             const IntervalSet& n, WeightMode mode, std::uint64_t seed, double epsilon,
                             double threshold, const SweepOptions& opts) {
  if (big_q < 2) throw error(errc::modulus_too_small, "Q = " + std::to_string(big_q));
  if (r < 2) throw error(errc::invalid_argument, "the averaged bound needs r >= 2");
  if (l.length > big_q || m.length > big_q || n.length > big_q)
    throw error(errc::invalid_argument, "L, M, N must not exceed Q");
  if (dbl(l.length) * dbl(2 * big_q) > opts.work_budget)
    throw error(errc::dimension_too_large, "L * 2Q exceeds the work budget");

  ParamList head{{"q", 0.0}, {"Q", dbl(big_q)}, {"r", dbl(r)}};
  auto ip = interval_params(l, m, n);
  head.insert(head.end(), ip.begin(), ip.end());
  head.emplace_back("weights", std::string(weight_mode_name(mode)));
  head.emplace_back("seed", dbl(static_cast<std::int64_t>(seed)));
  head.emplace_back("epsilon", epsilon);

  const int levels = [&] {
    const auto len = n.length;
    return len <= 2 ? 0 : static_cast<int>(std::ceil(std::log(dbl(len) / 2.0)));
  }();
  const double slack = std::pow(dbl(big_q), 2.0 * r * epsilon);
  const std::int64_t count = big_q + 1;
  std::vector<std::uint8_t> jr_bad(static_cast<std::size_t>(count), 0);

  auto run = run_items(
      count,
      [&](std::int64_t idx) {
        const std::int64_t q = big_q + idx;
        auto ring = std::make_shared<const ResidueRing>(q);
        auto w = make_weights(*ring, l, mode, seed, m, n);
        auto inst = make_instance(ring, std::move(w), m, n);
        const double measured = std::abs(trilinear_fast(inst));
        for (int j = 0; j <= levels; ++j) {
          const auto kj = std::clamp<std::int64_t>(
              static_cast<std::int64_t>(std::floor(2.0 * std::exp(dbl(j)) * dbl(big_q) / dbl(n.length))), 1, q);
          const double value = static_cast<double>(reciprocal_count_mod(*ring, r, kj).value);
          const double bound = (std::pow(dbl(kj), 2.0 * r) / dbl(q) + std::pow(dbl(kj), dbl(r))) * slack;
          if (value > bound) jr_bad[idx] = 1;
        }
        ParamList p = head;
        p[0].second = dbl(q);
        return std::vector<BoundReport>{
            make_report(std::move(p), measured, theorem2_reference(q, r, l.length, m.length, n.length))};
      },
      opts);

  Thm2Result out;
  out.sweep = finish(keys_of(head), std::move(run), threshold, "q");
  out.allowed_exceptions = std::pow(dbl(big_q), 1.0 - 2.0 * r * epsilon);
  for (std::size_t i = 0; i < out.sweep.reports.size(); ++i) out.reciprocal_exceptions += jr_bad[i];
  return out;
}

Lemma parse_lemma(const std::string& name) {
  if (name == "fourth-moment") return Lemma::fourth_moment;
  if (name == "energy") return Lemma::energy;
  if (name == "reciprocal-mod") return Lemma::reciprocal_mod;
  if (name == "reciprocal-rational") return Lemma::reciprocal_rational;
  if (name == "reciprocal-average") return Lemma::reciprocal_average;
  throw error(errc::invalid_grid, "unknown lemma '" + name +
                                      "' (expected fourth-moment, energy, reciprocal-mod, reciprocal-rational or "
                                      "reciprocal-average)");
}

SweepResult verify_lemma_sweep(Lemma lemma, const LemmaGrid& g, double threshold, const SweepOptions& opts) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw error(errc::invalid_grid, what);
  };
  switch (lemma) {
    case Lemma::fourth_moment: {
      need(!g.q_list.empty(), "fourth-moment needs q values");
      std::vector<std::string> keys{"q", "k", "H"};
      auto run = run_items(
          static_cast<std::int64_t>(g.q_list.size()),
          [&](std::int64_t idx) {
            const std::int64_t q = g.q_list[idx];
            ResidueRing ring(q);
            std::vector<std::int64_t> hs = g.h_list;
            if (hs.empty())
              for (std::int64_t h = 1; h <= q; ++h) hs.push_back(h);
            std::int64_t hmax = 0;
            for (auto h : hs) {
              need(h >= 1, "H must be >= 1");
              hmax = std::max(hmax, h);
            }
            const auto moments = fourth_moment_prefixes(ring, g.offset, hmax);
            std::vector<BoundReport> out;
            for (auto h : hs) {
              const double H = dbl(h);
              const double ref =
                  g.normalized ? dbl(ring.phi()) * (H * H + H * H * H * H / dbl(q)) : H * H;
              out.push_back(make_report({{"q", dbl(q)}, {"k", dbl(g.offset)}, {"H", H}},
                                        static_cast<double>(moments[h - 1]), ref));
            }
            return out;
          },
          opts);
      return finish(keys, std::move(run), threshold, "H");
    }
    case Lemma::energy: {
      need(!g.q_list.empty() && !g.a_list.empty() && !g.b_list.empty(), "energy needs q, A and B values");
      std::vector<std::string> keys{"q", "s", "A", "t", "B"};
      auto run = run_items(
          static_cast<std::int64_t>(g.q_list.size()),
          [&](std::int64_t idx) {
            const std::int64_t q = g.q_list[idx];
            ResidueRing ring(q);
            std::vector<BoundReport> out;
            for (auto a : g.a_list)
              for (auto b : g.b_list) {
                const auto rep = multiplicative_energy(ring, IntervalSet(g.offset, a), IntervalSet(g.offset, b));
                out.push_back(make_report(
                    {{"q", dbl(q)}, {"s", dbl(g.offset)}, {"A", dbl(a)}, {"t", dbl(g.offset)}, {"B", dbl(b)}},
                    static_cast<double>(rep.value), rep.bound_value));
              }
            return out;
          },
          opts);
      return finish(keys, std::move(run), threshold, "q");
    }
    case Lemma::reciprocal_mod: {
      need(!g.q_list.empty(), "reciprocal-mod needs q values");
      std::vector<std::string> keys{"q", "r", "K"};
      auto run = run_items(
          static_cast<std::int64_t>(g.q_list.size()),
          [&](std::int64_t idx) {
            const std::int64_t q = g.q_list[idx];
            ResidueRing ring(q);
            std::vector<std::int64_t> ks = g.k_list;
            if (ks.empty())
              for (std::int64_t k = 1; k <= q; ++k) ks.push_back(k);
            std::vector<BoundReport> out;
            for (auto k : ks) {
              if (k > q) continue;
              const auto rep = reciprocal_count_mod(ring, g.r, k);
              out.push_back(make_report({{"q", dbl(q)}, {"r", dbl(g.r)}, {"K", dbl(k)}},
                                        static_cast<double>(rep.value), rep.bound_value));
            }
            return out;
          },
          opts);
      return finish(keys, std::move(run), threshold, "K");
    }
    case Lemma::reciprocal_rational: {
      need(!g.k_list.empty(), "reciprocal-rational needs K values");
      std::vector<std::string> keys{"r", "K"};
      auto run = run_items(
          static_cast<std::int64_t>(g.k_list.size()),
          [&](std::int64_t idx) {
            const std::int64_t k = g.k_list[idx];
            const auto rep = reciprocal_count_rational(g.r, k);
            return std::vector<BoundReport>{
                make_report({{"r", dbl(g.r)}, {"K", dbl(k)}}, static_cast<double>(rep.value), rep.bound_value)};
          },
          opts);
      return finish(keys, std::move(run), threshold, "K");
    }
    case Lemma::reciprocal_average: {
      need(!g.big_q_list.empty() && !g.k_list.empty(), "reciprocal-average needs Q and K values");
      std::vector<std::string> keys{"Q", "r", "K"};
      std::vector<std::pair<std::int64_t, std::int64_t>> cells;
      for (auto bq : g.big_q_list)
        for (auto k : g.k_list)
          if (k <= bq) cells.emplace_back(bq, k);
      auto run = run_items(
          static_cast<std::int64_t>(cells.size()),
          [&](std::int64_t idx) {
            const auto [bq, k] = cells[idx];
            const auto avg = average_reciprocal_sweep(bq, g.r, k);
            return std::vector<BoundReport>{
                make_report({{"Q", dbl(bq)}, {"r", dbl(g.r)}, {"K", dbl(k)}}, avg.average, avg.reference)};
          },
          opts);
      return finish(keys, std::move(run), threshold, "Q");
    }
  }
  throw error(errc::invalid_grid, "unknown lemma");
}

}  // namespace kforms
