#include "kforms/dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>

#include "kforms/error.hpp"

namespace kforms {
namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

ComplexVector dft_naive(const ResidueRing& ring, std::span<const cplx> f, Direction dir) {
  const std::int64_t q = ring.q();
  if (static_cast<std::int64_t>(f.size()) != q)
    throw error(errc::length_mismatch, std::to_string(f.size()) + " != " + std::to_string(q));
  ComplexVector out(static_cast<std::size_t>(q));
  for (std::int64_t t = 0; t < q; ++t) {
    cplx acc = 0.0;
    std::int64_t idx = 0;
    const std::int64_t step = dir == Direction::forward ? t : (q - t) % q;
    for (std::int64_t z = 0; z < q; ++z) {
      acc += f[z] * ring.root(idx);
      idx += step;
      if (idx >= q) idx -= q;
    }
    out[t] = dir == Direction::forward ? acc : acc / static_cast<double>(q);
  }
  return out;
}

ComplexVector dft_fast(std::span<const cplx> f, Direction dir) {
  const int n = static_cast<int>(f.size());
  ComplexVector out(f.size());
  if (n == 0) return out;
  // FFTW_BACKWARD carries the +2πi sign, which is our forward convention.
  fftw_plan plan = plan_cache().get(n, dir == Direction::forward ? FFTW_BACKWARD : FFTW_FORWARD);
  auto* in = fftw_alloc_complex(f.size());
  auto* res = fftw_alloc_complex(f.size());
  for (int i = 0; i < n; ++i) {
    in[i][0] = f[i].real();
    in[i][1] = f[i].imag();
  }
  fftw_execute_dft(plan, in, res);
  const double scale = dir == Direction::forward ? 1.0 : 1.0 / n;
  for (int i = 0; i < n; ++i) out[i] = cplx(res[i][0], res[i][1]) * scale;
  fftw_free(in);
  fftw_free(res);
  return out;
}

ComplexVector cyclic_dft(const ResidueRing& ring, std::span<const cplx> f, Direction dir) {
  if (static_cast<std::int64_t>(f.size()) != ring.q())
    throw error(errc::length_mismatch, std::to_string(f.size()) + " != " + std::to_string(ring.q()));
  if (ring.q() <= kNaiveDftCutoff) return dft_naive(ring, f, dir);
  return dft_fast(f, dir);
}

}  // namespace kforms
