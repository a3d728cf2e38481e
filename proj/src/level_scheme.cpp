#include "cforge/level_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "cforge/errors.hpp"

namespace cforge {

const Level* LevelScheme::find_level(int id) const {
  for (const auto& lvl : levels) {
    if (lvl.id == id) return &lvl;
  }
  return nullptr;
}

const Transition* LevelScheme::find_transition(int a, int b) const {
  for (const auto& tr : transitions) {
    if ((tr.lower == a && tr.upper == b) || (tr.lower == b && tr.upper == a)) return &tr;
  }
  return nullptr;
}

int LevelScheme::ground_id() const {
  for (const auto& lvl : levels) {
    if (lvl.band == 0) return lvl.id;
  }
  throw validation_error("scheme has no ground level");
}

std::vector<int> LevelScheme::band_level_ids(int band) const {
  std::vector<const Level*> found;
  for (const auto& lvl : levels) {
    if (lvl.band == band) found.push_back(&lvl);
  }
  std::sort(found.begin(), found.end(), [](const Level* a, const Level* b) {
    if (a->omega != b->omega) return a->omega < b->omega;
    return a->id < b->id;
  });
  std::vector<int> ids;
  ids.reserve(found.size());
  for (const auto* lvl : found) ids.push_back(lvl->id);
  return ids;
}

const LevelScheme& validate_scheme(const LevelScheme& scheme) {
  std::set<int> ids;
  for (const auto& lvl : scheme.levels) {
    if (!ids.insert(lvl.id).second) {
      throw validation_error("duplicate level id " + std::to_string(lvl.id));
    }
    if (lvl.band < 0 || lvl.band > 2) {
      throw validation_error("level " + std::to_string(lvl.id) + ": band must be 0, 1 or 2");
    }
    if (!std::isfinite(lvl.omega)) {
      throw validation_error("level " + std::to_string(lvl.id) + ": omega not finite");
    }
  }

  int ground_count = 0;
  for (const auto& lvl : scheme.levels) {
    if (lvl.band == 0) {
      ++ground_count;
      if (lvl.omega != 0.0) {
        throw validation_error("ground level " + std::to_string(lvl.id) +
                               " must have omega 0");
      }
    }
  }
  if (ground_count != 1) {
    throw validation_error("scheme must have exactly one band-0 level, found " +
                           std::to_string(ground_count));
  }

  for (const auto& lvl : scheme.levels) {
    if (lvl.band == 1 && !(lvl.omega > 0.0)) {
      throw validation_error("band-1 level " + std::to_string(lvl.id) +
                             " must have positive omega");
    }
  }

  std::set<std::pair<int, int>> seen_pairs;
  for (const auto& tr : scheme.transitions) {
    const Level* lo = scheme.find_level(tr.lower);
    const Level* up = scheme.find_level(tr.upper);
    if (lo == nullptr || up == nullptr) {
      throw validation_error("transition references unknown level id " +
                             std::to_string(lo == nullptr ? tr.lower : tr.upper));
    }
    if (up->band != lo->band + 1) {
      throw validation_error("transition " + std::to_string(tr.lower) + "-" +
                             std::to_string(tr.upper) +
                             " must connect adjacent bands (lower first)");
    }
    if (!seen_pairs.insert({tr.lower, tr.upper}).second) {
      throw validation_error("duplicate transition " + std::to_string(tr.lower) + "-" +
                             std::to_string(tr.upper));
    }
    if (!std::isfinite(tr.dipole) || tr.dipole < 0.0) {
      throw validation_error("transition " + std::to_string(tr.lower) + "-" +
                             std::to_string(tr.upper) +
                             ": dipole must be finite and nonnegative");
    }
    if (!(tr.gamma > 0.0) || !std::isfinite(tr.gamma)) {
      throw validation_error("transition " + std::to_string(tr.lower) + "-" +
                             std::to_string(tr.upper) + ": dephasing gamma must be > 0");
    }
    if (up->band == 2 && !(up->omega > lo->omega)) {
      throw validation_error("band-2 level " + std::to_string(up->id) +
                             " must lie above connected band-1 level " +
                             std::to_string(lo->id));
    }
  }

  return scheme;
}

}  // namespace cforge
