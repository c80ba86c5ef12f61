#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pn {

using cplx = std::complex<double>;

/// Real <-> half-complex transforms of a fixed length backed by FFTW.
///
/// forward() returns the N/2 + 1 unnormalized coefficients sum_j f_j e^{-2 pi i j m / N};
/// inverse() applies the unnormalized inverse and divides by N. Plans are
/// created once per length under a lock; execution is reentrant.
class RealFft {
 public:
  explicit RealFft(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

  std::vector<cplx> forward(std::span<const double> f) const;
  std::vector<double> inverse(std::span<const cplx> spectrum) const;
  void inverse(std::span<const cplx> spectrum, std::span<double> out) const;

 private:
  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace pn
