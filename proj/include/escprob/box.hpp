#pragma once

#include <utility>

#include "escprob/vec.hpp"

namespace escprob {

/// Axis-aligned box [lower, upper] in 1..3 dimensions.
struct Box {
  Vec lower;
  Vec upper;

  int dim() const { return lower.dim(); }
  double volume() const;
  /// Lowest index among the longest axes.
  int longest_axis() const;
  std::pair<Box, Box> bisect(int axis) const;
};

}  // namespace escprob
