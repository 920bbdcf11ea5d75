#include "doa/validation.hpp"

#include "doa/parallel.hpp"
#include "doa/quasi_random.hpp"

namespace doa {

ValidationReport validate_atlas(const PolyField& field, const Atlas& atlas,
                                const ValidationParams& params) {
  ValidationReport report;
  report.requested = params.samples;
  if (params.samples == 0) return report;

  const int n = atlas.spectrum().dim();
  const auto [lo, hi] = params.box ? *params.box : atlas_extent(atlas);
  const std::size_t budget = params.samples * params.draws_per_sample;
  // Draw in batches so classification can fan out while the order of
  // accepted points stays that of the Halton sequence.
  const std::size_t batch = 4096;
  std::uint64_t next = 1;
  while (report.points.size() < params.samples && report.draws < budget) {
    std::vector<RealVector> xs(batch);
    std::vector<RealClassification> cls(batch);
    parallel_for(batch, params.workers, [&](std::size_t i) {
      const RealVector u = halton_point(n, next + i);
      xs[i] = lo + u.cwiseProduct(hi - lo);
      cls[i] = classify_real(atlas, xs[i]);
    });
    next += batch;
    for (std::size_t i = 0; i < batch; ++i) {
      if (report.points.size() == params.samples || report.draws == budget) break;
      ++report.draws;
      if (cls[i].member) {
        report.points.push_back({xs[i], cls[i].chart, cls[i].margin, {}});
      }
    }
  }

  parallel_for(report.points.size(), params.workers, [&](std::size_t i) {
    report.points[i].outcome = simulate(field, report.points[i].x, params.sim);
  });
  for (const auto& p : report.points) {
    switch (p.outcome.verdict) {
      case Verdict::kConverged:
        ++report.converged;
        break;
      case Verdict::kDiverged:
        ++report.diverged;
        break;
      case Verdict::kUndecided:
        ++report.undecided;
        break;
    }
  }
  return report;
}

}  // namespace doa
