// kforms: command-line front end for the Kloosterman trilinear-form toolkit.
//
// Every subcommand produces one or more BoundReport rows and writes them as
// CSV (default) or JSON. Exit status: 0 success, 1 when a ratio exceeds the
// --C threshold (or a trace check fails), 2 on usage errors.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "kforms/characters.hpp"
#include "kforms/congruence.hpp"
#include "kforms/error.hpp"
#include "kforms/kloosterman.hpp"
#include "kforms/parallel.hpp"
#include "kforms/proof_trace.hpp"
#include "kforms/report.hpp"
#include "kforms/sweep.hpp"
#include "kforms/trilinear.hpp"

namespace {

using namespace kforms;

struct Common {
  std::string format = "csv";
  std::string out;
  double budget_ms = 0.0;
  bool no_timing = false;
  double threshold = std::numeric_limits<double>::infinity();
  bool naive = false;
  bool fast = false;

  SweepOptions options() const {
    SweepOptions o;
    o.budget_ms = budget_ms;
    o.timing = !no_timing;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--budget-ms", c.budget_ms, "wall-clock budget; partial results are flagged");
  sub->add_flag("--no-timing", c.no_timing, "write runtime_ms = 0 for byte-stable output");
  sub->add_option("--C", c.threshold, "ratio threshold; exit 1 when exceeded");
}

void add_route(CLI::App* sub, Common& c) {
  auto* f = sub->add_flag("--fast", c.fast, "fast evaluation path (default)");
  sub->add_flag("--naive", c.naive, "brute-force reference path")->excludes(f);
}

double d(std::int64_t v) { return static_cast<double>(v); }

int finish(const SweepResult& res, const Common& c) {
  emit_report(res, parse_report_format(c.format), c.out);
  std::fprintf(stderr, "# reports=%zu exceptions=%lld threshold=%s fitted_exponent=%s truncated=%d\n",
               res.reports.size(), static_cast<long long>(res.exceptions), format_number(res.threshold).c_str(),
               format_number(res.fitted_exponent).c_str(), res.truncated ? 1 : 0);
  return res.exceptions > 0 ? 1 : 0;
}

SweepResult single(BoundReport rep, double threshold) {
  SweepResult res;
  res.reports.push_back(std::move(rep));
  res.threshold = threshold;
  res.exceptions = count_exceptions(res.reports, threshold);
  res.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Kloosterman trilinear-form toolkit"};
  app.require_subcommand(1);

  Common c;
  std::int64_t q = 0, big_q = 0, l = 1, m = 1, n = 1, k = 1;
  int r = 2;
  std::string l_text = "0:1", m_text = "0:1", n_text = "0:1", h_text = "0:1", a_text = "0:1", b_text = "0:1";
  std::string weights = "ones";
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  std::string q_list, h_list, k_list, a_list, b_list, big_q_list, primes, lemma;
  std::int64_t offset = 0;
  bool normalized = false;

  auto* ring_info = app.add_subcommand("ring-info", "phi(q), tau(q) and unit count");
  ring_info->add_option("--q", q)->required();
  add_common(ring_info, c);

  auto* ksum = app.add_subcommand("ksum", "single Kloosterman sum K_q(m, n)");
  ksum->add_option("--q", q)->required();
  ksum->add_option("--m", m);
  ksum->add_option("--n", n);
  add_route(ksum, c);
  add_common(ksum, c);

  auto* ksum2 = app.add_subcommand("ksum2", "double Kloosterman sum K_q(l, m, n)");
  ksum2->add_option("--q", q)->required();
  ksum2->add_option("--l", l);
  ksum2->add_option("--m", m);
  ksum2->add_option("--n", n);
  add_route(ksum2, c);
  add_common(ksum2, c);

  auto add_form = [&](CLI::App* sub) {
    sub->add_option("--L", l_text, "start:length");
    sub->add_option("--M", m_text, "start:length");
    sub->add_option("--N", n_text, "start:length");
    sub->add_option("--weights", weights)->check(CLI::IsMember({"ones", "rademacher", "phase", "extremal"}));
    sub->add_option("--seed", seed);
  };

  auto* tri = app.add_subcommand("trilinear", "weighted trilinear form S_q(alpha; L, M, N)");
  tri->add_option("--q", q)->required();
  add_form(tri);
  add_route(tri, c);
  add_common(tri, c);

  auto* energy = app.add_subcommand("energy", "multiplicative energy E(A, B)");
  energy->add_option("--q", q)->required();
  energy->add_option("--A", a_text, "start:length");
  energy->add_option("--B", b_text, "start:length");
  add_common(energy, c);

  auto* jr_mod = app.add_subcommand("jr-mod", "J_r(q; K)");
  jr_mod->add_option("--q", q)->required();
  jr_mod->add_option("--r", r);
  jr_mod->add_option("--K", k)->required();
  add_route(jr_mod, c);
  add_common(jr_mod, c);

  auto* jr_rat = app.add_subcommand("jr-rat", "J_r(K) over the rationals");
  jr_rat->add_option("--r", r);
  jr_rat->add_option("--K", k)->required();
  add_common(jr_rat, c);

  auto* moment = app.add_subcommand("char-moment", "fourth moment of character sums over an interval");
  moment->add_option("--q", q)->required();
  moment->add_option("--H", h_text, "start:length");
  add_route(moment, c);
  add_common(moment, c);

  auto* trace = app.add_subcommand("proof-trace", "dyadic decomposition and Hoelder chain, one row per cell");
  trace->add_option("--q", q)->required();
  trace->add_option("--r", r);
  add_form(trace);
  add_common(trace, c);

  auto* thm1 = app.add_subcommand("verify-thm1", "sweep |S_q| against min(B1, B2)");
  thm1->add_option("--q-list", q_list, "grid, e.g. 101..199 or 101,103");
  thm1->add_option("--primes", primes, "primes in lo..hi");
  add_form(thm1);
  add_common(thm1, c);

  auto* thm2 = app.add_subcommand("verify-thm2", "sweep q in [Q, 2Q] against the averaged bound");
  thm2->add_option("--Q", big_q)->required();
  thm2->add_option("--r", r);
  thm2->add_option("--epsilon", epsilon);
  add_form(thm2);
  add_common(thm2, c);

  auto* lem = app.add_subcommand("verify-lemma", "ratio sweeps for the counting lemmas");
  lem->add_option("--lemma", lemma,
                  "fourth-moment, energy, reciprocal-mod, reciprocal-rational or reciprocal-average")->required();
  lem->add_option("--q-list", q_list);
  lem->add_option("--H-list", h_list);
  lem->add_option("--k", offset, "interval offset");
  lem->add_option("--A-list", a_list);
  lem->add_option("--B-list", b_list);
  lem->add_option("--K-list", k_list);
  lem->add_option("--Q-list", big_q_list);
  lem->add_option("--r", r);
  lem->add_flag("--normalized", normalized, "fourth-moment: compare with phi(q)(H^2 + H^4/q)");
  add_common(lem, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ring_info) {
      ResidueRing ring(q);
      return finish(single(make_report({{"q", d(q)}, {"phi", d(ring.phi())}, {"tau", d(ring.tau())}},
                                       d(ring.phi()), d(q)),
                           c.threshold),
                    c);
    }
    if (*ksum) {
      ResidueRing ring(q);
      const cplx v = c.naive ? single_sum(ring, m, n) : single_table(ring, n).values[ring.reduce(m)];
      return finish(single(make_report({{"q", d(q)}, {"m", d(m)}, {"n", d(n)}, {"re", v.real()}, {"im", v.imag()}},
                                       std::abs(v), weil_reference(ring, m, n)),
                           c.threshold),
                    c);
    }
    if (*ksum2) {
      ResidueRing ring(q);
      const cplx v = c.naive ? double_naive(ring, l, m, n) : double_fast(ring, l, m, n);
      return finish(single(make_report({{"q", d(q)}, {"l", d(l)}, {"m", d(m)}, {"n", d(n)}, {"re", v.real()},
                                        {"im", v.imag()}},
                                       std::abs(v), d(q)),
                           c.threshold),
                    c);
    }
    if (*tri) {
      auto ring = std::make_shared<const ResidueRing>(q);
      const auto li = parse_interval(l_text), mi = parse_interval(m_text), ni = parse_interval(n_text);
      auto inst = make_instance(ring, make_weights(*ring, li, parse_weight_mode(weights), seed, mi, ni), mi, ni);
      const cplx v = c.naive ? trilinear_naive(inst) : trilinear_fast(inst);
      const auto t1 = theorem1_bounds(inst);
      return finish(single(make_report({{"q", d(q)},
                                        {"L_start", d(li.start)},
                                        {"L", d(li.length)},
                                        {"M_start", d(mi.start)},
                                        {"M", d(mi.length)},
                                        {"N_start", d(ni.start)},
                                        {"N", d(ni.length)},
                                        {"weights", weights},
                                        {"seed", d(static_cast<std::int64_t>(seed))},
                                        {"re", v.real()},
                                        {"im", v.imag()}},
                                       std::abs(v), t1.min_bound),
                           c.threshold),
                    c);
    }
    if (*energy) {
      ResidueRing ring(q);
      const auto a = parse_interval(a_text), b = parse_interval(b_text);
      const auto rep = multiplicative_energy(ring, a, b);
      return finish(single(make_report({{"q", d(q)}, {"s", d(a.start)}, {"A", d(a.length)}, {"t", d(b.start)},
                                        {"B", d(b.length)}},
                                       static_cast<double>(rep.value), rep.bound_value),
                           c.threshold),
                    c);
    }
    if (*jr_mod) {
      ResidueRing ring(q);
      const auto rep = reciprocal_count_mod(ring, r, k);
      const double value = c.naive ? static_cast<double>(reciprocal_tally_naive(ring, r, k))
                                   : static_cast<double>(rep.value);
      return finish(single(make_report({{"q", d(q)}, {"r", d(r)}, {"K", d(k)}}, value, rep.bound_value),
                           c.threshold),
                    c);
    }
    if (*jr_rat) {
      const auto rep = reciprocal_count_rational(r, k);
      return finish(
          single(make_report({{"r", d(r)}, {"K", d(k)}}, static_cast<double>(rep.value), rep.bound_value),
                 c.threshold),
          c);
    }
    if (*moment) {
      ResidueRing ring(q);
      const auto h = parse_interval(h_text);
      const double value = c.naive ? fourth_moment(CharacterTable(ring), h)
                                   : static_cast<double>(fourth_moment_by_count(ring, h));
      const double H = d(h.length);
      return finish(single(make_report({{"q", d(q)}, {"k", d(h.start)}, {"H", H}}, value, H * H), c.threshold),
                    c);
    }
    if (*trace) {
      auto ring = std::make_shared<const ResidueRing>(q);
      const auto li = parse_interval(l_text), mi = parse_interval(m_text), ni = parse_interval(n_text);
      auto inst = make_instance(ring, make_weights(*ring, li, parse_weight_mode(weights), seed, mi, ni), mi, ni);
      const auto tr = proof_trace(inst, r);
      SweepResult res;
      res.threshold = c.threshold;
      for (const auto& cell : tr.cells)
        res.reports.push_back(make_report({{"q", d(q)},
                                           {"r", d(r)},
                                           {"i", d(cell.i)},
                                           {"j", d(cell.j)},
                                           {"sign_x", d(cell.sign_x)},
                                           {"sign_y", d(cell.sign_y)},
                                           {"re", cell.s.real()},
                                           {"im", cell.s.imag()}},
                                          std::abs(cell.s), cell.holder_rhs));
      res.exceptions = count_exceptions(res.reports, c.threshold);
      res.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
      const double err = std::abs(tr.reconstruction - tr.total);
      const double tol = 1e-7 * d(li.length) * d(mi.length) * d(ni.length) * d(q);
      std::fprintf(stderr,
                   "# I=%d J=%d reconstruction_error=%s holder_ok=%d max_holder_ratio=%s chains_ok=%d "
                   "nonunit_zero=%d\n",
                   tr.sets.levels_m, tr.sets.levels_n, format_number(err).c_str(), tr.holder_ok ? 1 : 0,
                   format_number(tr.max_holder_ratio).c_str(),
                   (tr.first_moment_chain_ok && tr.second_moment_chain_ok && tr.moment_chain_ok) ? 1 : 0,
                   tr.nonunit_zero ? 1 : 0);
      const int rc = finish(res, c);
      const bool ok = err <= tol && tr.holder_ok && tr.first_moment_chain_ok && tr.second_moment_chain_ok &&
                      tr.moment_chain_ok && tr.nonunit_zero;
      return ok ? rc : 1;
    }
    if (*thm1) {
      std::vector<std::int64_t> qs;
      if (!primes.empty()) {
        const auto range = parse_grid(primes);
        qs = primes_in(range.front(), range.back());
      } else if (!q_list.empty()) {
        qs = parse_grid(q_list);
      } else {
        throw error(errc::invalid_argument, "verify-thm1 needs --q-list or --primes");
      }
      const auto res = verify_thm1_sweep(qs, parse_interval(l_text), parse_interval(m_text),
                                         parse_interval(n_text), parse_weight_mode(weights), seed, c.threshold,
                                         c.options());
      return finish(res, c);
    }
    if (*thm2) {
      const auto res = verify_thm2_sweep(big_q, r, parse_interval(l_text), parse_interval(m_text),
                                         parse_interval(n_text), parse_weight_mode(weights), seed, epsilon,
                                         c.threshold, c.options());
      std::fprintf(stderr, "# allowed_exceptions=%s reciprocal_exceptions=%lld\n",
                   format_number(res.allowed_exceptions).c_str(),
                   static_cast<long long>(res.reciprocal_exceptions));
      return finish(res.sweep, c);
    }
    if (*lem) {
      LemmaGrid g;
      if (!q_list.empty()) g.q_list = parse_grid(q_list);
      if (!h_list.empty()) g.h_list = parse_grid(h_list);
      if (!a_list.empty()) g.a_list = parse_grid(a_list);
      if (!b_list.empty()) g.b_list = parse_grid(b_list);
      if (!k_list.empty()) g.k_list = parse_grid(k_list);
      if (!big_q_list.empty()) g.big_q_list = parse_grid(big_q_list);
      g.offset = offset;
      g.r = r;
      g.normalized = normalized;
      return finish(verify_lemma_sweep(parse_lemma(lemma), g, c.threshold, c.options()), c);
    }
  } catch (const kforms::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
