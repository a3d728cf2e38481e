// grid.hpp - dense 2D array and uniform-axis helpers.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cforge/errors.hpp"

namespace cforge {

using cplx = std::complex<double>;

template <typename T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T* row(std::size_t r) { return data_.data() + r * cols_; }
  const T* row(std::size_t r) const { return data_.data() + r * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool same_shape(const Array2D& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Builds start, start + step, ... with `count` entries.
std::vector<double> uniform_axis(double start, double step, std::size_t count);

// Returns the step of an axis that must be strictly increasing and uniform
// within 1e-9 relative; throws validation_error otherwise. `name` appears in
// the error message.
double axis_step(std::span<const double> axis, const char* name);

}  // namespace cforge
