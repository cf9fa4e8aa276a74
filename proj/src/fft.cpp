#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace innerlip::detail {

namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex plan_mutex;

// Plans are created once per size against a scratch buffer and reused through
// fftw_execute_dft, which is reentrant for distinct arrays with equal alignment.
const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n * n));
  const int ni = static_cast<int>(n);
  Plans p;
  p.forward = fftw_plan_dft_2d(ni, ni, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_2d(ni, ni, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(scratch);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void fft2d(std::vector<cplx>& data, std::size_t n, bool inverse) {
  const Plans& p = plans_for(n);
  const std::size_t count = n * n;
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  std::memcpy(buf, data.data(), sizeof(fftw_complex) * count);
  fftw_execute_dft(inverse ? p.backward : p.forward, buf, buf);
  std::memcpy(static_cast<void*>(data.data()), buf, sizeof(fftw_complex) * count);
  fftw_free(buf);
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(count);
    for (auto& v : data) v *= scale;
  }
}

}  // namespace innerlip::detail
