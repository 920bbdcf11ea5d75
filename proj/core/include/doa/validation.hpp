#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "doa/atlas.hpp"
#include "doa/oracle.hpp"

namespace doa {

struct ValidationParams {
  std::size_t samples = 500;
  SimParams sim;
  /// Sampling box; defaults to atlas_extent(atlas).
  std::optional<std::pair<RealVector, RealVector>> box;
  /// Halton draws attempted per requested sample before giving up.
  std::size_t draws_per_sample = 2000;
  int workers = 1;
};

struct ValidationPoint {
  RealVector x;
  int chart = -1;
  double margin = 0.0;
  SimOutcome outcome;
};

struct ValidationReport {
  std::size_t requested = 0;
  std::size_t draws = 0;
  std::size_t converged = 0;
  std::size_t diverged = 0;
  std::size_t undecided = 0;
  std::vector<ValidationPoint> points;
};

/// Draws claimed-member points from a Halton sequence over the box and runs
/// the trajectory oracle on each.
ValidationReport validate_atlas(const PolyField& field, const Atlas& atlas,
                                const ValidationParams& params = {});

}  // namespace doa
