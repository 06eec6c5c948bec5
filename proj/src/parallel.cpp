#include "kforms/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "kforms/energy_kernel.hpp"

namespace kforms {

int configure_threads_from_env() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("KFORMS_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) threads = requested;
  }
  omp_set_num_threads(threads);
  return threads;
}

int max_threads() { return omp_get_max_threads(); }

namespace detail {

std::vector<std::int64_t> unit_residues(const ResidueRing& ring, const IntervalSet& interval) {
  std::vector<std::int64_t> out;
  for (std::int64_t z = interval.first(); z <= interval.last(); ++z) {
    std::int64_t r = ring.reduce(z);
    if (ring.unit_mask()[r]) out.push_back(r);
  }
  return out;
}

std::uint64_t product_energy(const ResidueRing& ring, std::span<const std::int64_t> a,
                             std::span<const std::int64_t> b) {
  const std::int64_t q = ring.q();
  std::vector<std::uint64_t> count(static_cast<std::size_t>(q), 0);
  const auto na = static_cast<std::int64_t>(a.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(static_cast<std::size_t>(q), 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < na; ++i)
      for (std::int64_t y : b) ++local[static_cast<std::int64_t>(static_cast<__int128>(a[i]) * y % q)];
#pragma omp critical
    for (std::int64_t s = 0; s < q; ++s) count[s] += local[s];
  }
  std::uint64_t energy = 0;
#pragma omp parallel for reduction(+ : energy) schedule(static)
  for (std::int64_t s = 0; s < q; ++s) energy += count[s] * count[s];
  return energy;
}

std::uint64_t r_fold_energy(std::int64_t q, int r, std::span<const std::int64_t> support) {
  std::vector<std::uint64_t> cur(static_cast<std::size_t>(q), 0);
  for (auto s : support) ++cur[s];
  std::vector<std::uint64_t> next(static_cast<std::size_t>(q));
  for (int step = 1; step < r; ++step) {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < q; ++s) {
      std::uint64_t acc = 0;
      for (auto t : support) {
        std::int64_t idx = s - t;
        if (idx < 0) idx += q;
        acc += cur[idx];
      }
      next[s] = acc;
    }
    cur.swap(next);
  }
  std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (std::int64_t s = 0; s < q; ++s) total += cur[s] * cur[s];
  return total;
}

}  // namespace detail
}  // namespace kforms
