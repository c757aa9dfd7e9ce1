#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "horoflow/group.hpp"

namespace horoflow {

// Axis-aligned coordinate box [lower, upper] in graded coordinates.
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(int q, double half_width);
  int dimension() const { return static_cast<int>(lower.size()); }
  bool contains(std::span<const double> x) const;
  // Throws DomainError if bounds are inverted or lengths differ.
  void validate() const;
  // True if some side has zero width.
  bool degenerate() const;
};

// Whole space, or a box left-translated by `translation` (x is inside iff
// translation^{-1} x lies in the box).
struct Domain {
  std::optional<Box> box;
  std::optional<GroupElement> translation;

  static Domain whole_space() { return {}; }
  static Domain from_box(Box b) { return {std::move(b), std::nullopt}; }
  bool is_whole_space() const { return !box.has_value(); }
  bool contains(const GradedAlgebra& alg, std::span<const double> x) const;
};

using Rng = std::mt19937_64;

GroupElement sample_in_box(const Box& box, Rng& rng);
GroupElement sample_in_cube(int q, double half_width, Rng& rng);

}  // namespace horoflow
