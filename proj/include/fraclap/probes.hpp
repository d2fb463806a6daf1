#pragma once

#include <cstdint>
#include <vector>

#include "fraclap/geometry.hpp"

namespace fraclap {

// Van der Corput radical inverse (1-based index).
double halton(std::uint64_t index, int base);

// Quasi-uniform points of the ball via the Halton sequence and the
// area-preserving polar map.  `seed` offsets the start index, so identical
// (count, seed) always produce identical points and a larger count extends
// the same sequence.
std::vector<Point> halton_ball_points(const Ball& B, std::size_t count, std::uint64_t seed);

// Points of the spherical shell r_in <= |x - c| <= r_out.
std::vector<Point> halton_shell_points(const Point& center, double r_in, double r_out, int dim,
                                       std::size_t count, std::uint64_t seed);

}  // namespace fraclap
