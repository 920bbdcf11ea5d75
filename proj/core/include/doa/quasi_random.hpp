#pragma once

#include <cstdint>
#include <vector>

#include "doa/types.hpp"

namespace doa {

/// Van der Corput radical inverse of `index` in the given base, in [0, 1).
double radical_inverse(std::uint64_t index, int base);

/// Halton point with the first `dim` prime bases, in [0, 1)^dim.
RealVector halton_point(int dim, std::uint64_t index);

/// `count` deterministic quasi-uniform unit vectors in R^dim: evenly spaced
/// angles for dim 2, a spherical Fibonacci lattice for dim 3, and
/// Box-Muller-mapped Halton points otherwise.
std::vector<RealVector> sphere_directions(int dim, std::size_t count);

}  // namespace doa
