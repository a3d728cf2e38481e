// level_scheme.hpp - few-level systems grouped in excitation bands.
//
// Levels live in bands 0/1/2 (number of excitation quanta) with angular
// frequencies in rad/ps relative to the single ground level. Transitions
// connect adjacent bands and carry a dipole amplitude plus the dephasing
// rate of the coherence between the pair (1/ps).

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cforge {

struct Level {
  int id = 0;
  std::string label;
  int band = 0;
  double omega = 0.0;  // rad/ps
};

struct Transition {
  int lower = 0;  // level id in the lower band
  int upper = 0;  // level id in the upper band
  double dipole = 0.0;
  double gamma = 0.0;  // 1/ps
};

struct LevelScheme {
  std::vector<Level> levels;
  std::vector<Transition> transitions;

  const Level* find_level(int id) const;
  // Order-insensitive transition lookup.
  const Transition* find_transition(int a, int b) const;
  int ground_id() const;  // requires a validated scheme
  // Levels of one band sorted by (omega, id) - the enumeration order.
  std::vector<int> band_level_ids(int band) const;
};

// Returns the scheme unchanged if every invariant holds; throws
// validation_error naming the first violation otherwise.
const LevelScheme& validate_scheme(const LevelScheme& scheme);

}  // namespace cforge
