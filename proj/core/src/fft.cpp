#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace ddcap::detail {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    // Planning scribbles over its buffers, so plan on scratch arrays and run
    // through the new-array interface.
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

ComplexVector dft(std::span<const Complex> in, FftSign sign) {
  ComplexVector input(in.begin(), in.end());
  ComplexVector out(in.size());
  if (in.empty()) return out;
  const int fftw_sign = sign == FftSign::negative ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = cache().get(static_cast<int>(in.size()), fftw_sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(input.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace ddcap::detail
