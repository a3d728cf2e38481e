// fft.hpp - complex FFT for arbitrary lengths.
//
// Conventions (fixed, relied on by the extraction pipeline):
//   forward:  X[k] = sum_j x[j] * exp(-2*pi*i*j*k/n)
//   inverse:  X[k] = sum_j x[j] * exp(+2*pi*i*j*k/n)   (unnormalized)
// Power-of-two lengths use iterative Cooley-Tukey; everything else goes
// through Bluestein's chirp-z reduction onto an internal power-of-two grid.
// A plan holds the tables for one length and is safe to share across threads.

#pragma once

#include <cstddef>
#include <vector>

#include "cforge/grid.hpp"

namespace cforge {

class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(cplx* data) const;
  void inverse(cplx* data) const;

  void forward(std::vector<cplx>& data) const { forward(data.data()); }
  void inverse(std::vector<cplx>& data) const { inverse(data.data()); }

 private:
  void pow2_transform(cplx* data, bool invert) const;  // length m_

  std::size_t n_ = 0;
  bool is_pow2_ = false;
  std::size_t m_ = 0;                // internal power-of-two length
  std::vector<std::size_t> bitrev_;  // size m_
  std::vector<cplx> twiddle_;        // size m_/2, exp(-2*pi*i*k/m_)
  std::vector<cplx> chirp_;          // Bluestein only, size n_
  std::vector<cplx> chirp_fft_;      // Bluestein only, size m_
};

}  // namespace cforge
