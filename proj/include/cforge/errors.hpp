// errors.hpp - exception types shared across the toolkit.
//
// validation_error: malformed inputs or violated preconditions (schemes,
//   plans, configs, axis mismatches). Maps to CLI exit code 2.
// stage_error: failures raised while processing otherwise-valid data
//   (missing phase frames, time-domain wrap-around). Maps to exit code 3.

#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

class stage_error : public std::runtime_error {
 public:
  explicit stage_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cforge
