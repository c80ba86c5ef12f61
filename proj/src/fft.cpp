#include "pn/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace pn {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// FFTW's planner is not thread-safe; plans are shared and never destroyed.
std::pair<fftw_plan, fftw_plan> plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> r(n);
    std::vector<cplx> c(n / 2 + 1);
    auto* cbuf = reinterpret_cast<fftw_complex*>(c.data());
    const int len = static_cast<int>(n);
    PlanPair p{fftw_plan_dft_r2c_1d(len, r.data(), cbuf, FFTW_ESTIMATE | FFTW_UNALIGNED),
               fftw_plan_dft_c2r_1d(len, cbuf, r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED)};
    if (!p.forward || !p.inverse) throw std::runtime_error("FFTW planning failed");
    it = cache.emplace(n, p).first;
  }
  return {it->second.forward, it->second.inverse};
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  auto [f, i] = plans_for(n);
  forward_plan_ = f;
  inverse_plan_ = i;
}

std::vector<cplx> RealFft::forward(std::span<const double> f) const {
  if (f.size() != n_) throw std::invalid_argument("RealFft::forward: length mismatch");
  std::vector<double> in(f.begin(), f.end());
  std::vector<cplx> out(spectrum_size());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> RealFft::inverse(std::span<const cplx> spectrum) const {
  std::vector<double> out(n_);
  inverse(spectrum, out);
  return out;
}

void RealFft::inverse(std::span<const cplx> spectrum, std::span<double> out) const {
  if (spectrum.size() != spectrum_size() || out.size() != n_)
    throw std::invalid_argument("RealFft::inverse: length mismatch");
  // c2r overwrites its input.
  std::vector<cplx> in(spectrum.begin(), spectrum.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n_);
  for (double& v : out) v *= scale;
}

}  // namespace pn
