#include "cforge/fft.hpp"

#include <cmath>

#include "cforge/errors.hpp"
#include "cforge/units.hpp"

namespace cforge {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n_ == 0) throw validation_error("FftPlan: length must be positive");
  is_pow2_ = power_of_two(n_);
  m_ = is_pow2_ ? n_ : next_pow2(2 * n_ - 1);

  bitrev_.assign(m_, 0);
  std::size_t log2m = 0;
  while ((std::size_t{1} << log2m) < m_) ++log2m;
  for (std::size_t i = 1; i < m_; ++i) {
    bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (log2m - 1));
  }

  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    const double angle = -kTwoPi * static_cast<double>(k) / static_cast<double>(m_);
    twiddle_[k] = cplx(std::cos(angle), std::sin(angle));
  }

  if (!is_pow2_) {
    // chirp_[j] = exp(-i*pi*j^2/n); j^2 reduced mod 2n keeps the angle small.
    chirp_.resize(n_);
    const auto two_n = static_cast<unsigned long long>(2 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto jj = static_cast<unsigned long long>(j) * j % two_n;
      const double angle = -kTwoPi * 0.5 * static_cast<double>(jj) / static_cast<double>(n_);
      chirp_[j] = cplx(std::cos(angle), std::sin(angle));
    }
    std::vector<cplx> b(m_, cplx(0.0, 0.0));
    b[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      b[j] = std::conj(chirp_[j]);
      b[m_ - j] = b[j];
    }
    pow2_transform(b.data(), false);
    chirp_fft_ = std::move(b);
  }
}

void FftPlan::pow2_transform(cplx* data, bool invert) const {
  const std::size_t m = m_;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = m / len;
    for (std::size_t block = 0; block < m; block += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = twiddle_[k * stride];
        if (invert) w = std::conj(w);
        const cplx u = data[block + k];
        const cplx v = data[block + k + half] * w;
        data[block + k] = u + v;
        data[block + k + half] = u - v;
      }
    }
  }
}

void FftPlan::forward(cplx* data) const {
  if (n_ == 1) return;
  if (is_pow2_) {
    pow2_transform(data, false);
    return;
  }
  std::vector<cplx> a(m_, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n_; ++j) a[j] = data[j] * chirp_[j];
  pow2_transform(a.data(), false);
  for (std::size_t k = 0; k < m_; ++k) a[k] *= chirp_fft_[k];
  pow2_transform(a.data(), true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = chirp_[k] * a[k] * scale;
}

void FftPlan::inverse(cplx* data) const {
  if (n_ == 1) return;
  if (is_pow2_) {
    pow2_transform(data, true);
    return;
  }
  for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]);
  forward(data);
  for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]);
}

}  // namespace cforge
