#include "cforge/grid.hpp"

#include <cmath>
#include <string>

namespace cforge {

std::vector<double> uniform_axis(double start, double step, std::size_t count) {
  std::vector<double> axis(count);
  for (std::size_t i = 0; i < count; ++i) axis[i] = start + step * static_cast<double>(i);
  return axis;
}

double axis_step(std::span<const double> axis, const char* name) {
  if (axis.size() < 2) {
    throw validation_error(std::string(name) + ": axis needs at least 2 samples");
  }
  const double step = axis[1] - axis[0];
  if (!(step > 0.0)) {
    throw validation_error(std::string(name) + ": axis must be strictly increasing");
  }
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const double local = axis[i] - axis[i - 1];
    if (!(local > 0.0) || std::abs(local - step) > 1e-9 * std::abs(step)) {
      throw validation_error(std::string(name) + ": axis not uniform at index " +
                             std::to_string(i));
    }
  }
  return step;
}

}  // namespace cforge
