#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "doa/embryo.hpp"
#include "doa/poly_field.hpp"
#include "doa/spectral.hpp"
#include "doa/types.hpp"

namespace doa {

/// How a chart decides membership from its coefficient blocks.
enum class MembershipRule {
  /// r(z) = (sum_{|j|=p} |B_j (z - z0)^j|)^(1/p), the degree-p block only.
  kTopBlock,
  /// max over p/2 <= m <= p of the same root test on block m; a finite
  /// stand-in for the limsup, kept for comparison.
  kTailLimsup,
};

std::string to_string(MembershipRule rule);
MembershipRule membership_rule_from_string(const std::string& name);

struct Membership {
  bool member = false;
  double margin = 0.0;
};

/// One membership region: an embryo plus its root test.
class Chart {
 public:
  Chart(Embryo embryo, std::shared_ptr<const Spectrum> spectrum,
        MembershipRule rule = MembershipRule::kTopBlock);

  const Embryo& embryo() const { return embryo_; }
  const Spectrum& spectrum() const { return *spectrum_; }
  MembershipRule rule() const { return rule_; }
  int generation() const { return embryo_.generation(); }

  /// Center in state coordinates, Re(S z0).
  RealVector center_real() const;

  /// Root-test value r(z); the chart contains z iff r(z) < 1. Sums run in
  /// log space over coefficient moduli in graded-lex order.
  double margin(const ComplexVector& z) const;
  Membership membership(const ComplexVector& z) const;

 private:
  struct LogTerm {
    MultiIndex j;
    double log_abs;
  };
  struct TestedBlock {
    int degree;
    std::vector<LogTerm> terms;
  };

  Embryo embryo_;
  std::shared_ptr<const Spectrum> spectrum_;
  MembershipRule rule_;
  std::vector<TestedBlock> blocks_;
};

Membership chart_membership(const Chart& chart, const ComplexVector& z);

/// A boundary point considered during one growth step.
struct GrowthCandidate {
  int chart = -1;
  int direction = -1;
  RealVector x;
  ComplexVector z;
  double abs_w = 0.0;
  double margin = 0.0;
};

/// Record of one growth step, kept in the atlas file.
struct GrowthStep {
  int step = 0;
  double w_max = 0.0;
  std::size_t sampled = 0;
  std::size_t rays_unbounded = 0;
  std::size_t rejected_large = 0;
  std::size_t rejected_covered = 0;
  std::size_t rejected_separation = 0;
  std::vector<GrowthCandidate> selected;
  std::vector<int> charts_added;
  bool stopped = false;
  std::string stop_reason;
};

/// Ordered list of charts whose union, mapped by S, estimates the domain of
/// attraction. Exactly one generation-0 chart, first.
class Atlas {
 public:
  Atlas(std::string system_id, std::shared_ptr<const Spectrum> spectrum,
        Chart origin_chart);

  const std::string& system_id() const { return system_id_; }
  const Spectrum& spectrum() const { return *spectrum_; }
  const std::shared_ptr<const Spectrum>& spectrum_ptr() const {
    return spectrum_;
  }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& origin_chart() const { return charts_.front(); }
  int max_generation() const { return charts_.back().generation(); }

  /// Appends a chart; generations must be non-decreasing and >= 1.
  void add_chart(Chart chart);

  std::vector<GrowthStep>& growth_log() { return log_; }
  const std::vector<GrowthStep>& growth_log() const { return log_; }

 private:
  std::string system_id_;
  std::shared_ptr<const Spectrum> spectrum_;
  std::vector<Chart> charts_;
  std::vector<GrowthStep> log_;
};

struct RealClassification {
  bool member = false;
  /// Index of the first chart containing the point, or -1.
  int chart = -1;
  /// Margin in that chart, or the smallest margin over all charts.
  double margin = 0.0;
};

/// Classifies x = S z against every chart with generation <= max_generation
/// (all charts when negative).
RealClassification classify_real(const Atlas& atlas, const RealVector& x,
                                 int max_generation = -1);

bool point_membership_real(const Atlas& atlas, const RealVector& x);

struct BoundaryParams {
  double tol = 0.02;
  double search_radius = 10.0;
  int march_steps = 256;
  int max_bisections = 60;
};

struct BoundarySample {
  /// False when the ray never reaches margin 1 within the search radius.
  bool exited = false;
  RealVector x;
  double margin = 0.0;
  /// Distance from the chart center along the ray.
  double t = 0.0;
  int bisections = 0;
};

/// First crossing of margin 1 along center_real() + t * direction, refined
/// by bisection until the inner end has margin in [1 - tol, 1).
BoundarySample boundary_sample(const Chart& chart, const RealVector& direction,
                               const BoundaryParams& params = {});

struct SelectionParams {
  BoundaryParams boundary;
  /// Boundary samples per requested center and frontier chart (M = this * q).
  int directions_per_point = 64;
  /// W_max = factor * median |W_p| over the step's boundary samples, unless
  /// `w_max` is given.
  double w_max_factor = 1e3;
  std::optional<double> w_max;
  /// A sample is already covered when another chart has margin below this.
  double covered_margin = 0.9;
};

struct Selection {
  std::vector<GrowthCandidate> centers;
  double w_max = 0.0;
  GrowthStep record;
};

/// Boundary points of the newest charts with small |W_p|, at most q of
/// them, pairwise separated by an angle of at least pi/q as seen from the
/// origin. Throws NoCandidates when nothing survives.
Selection select_expansion_points(const Atlas& atlas, int q,
                                  const SelectionParams& params,
                                  int workers = 1);

struct GrowthConfig {
  std::string system_id = "system";
  int degree = 30;
  int steps = 0;
  int points = 3;
  MembershipRule rule = MembershipRule::kTopBlock;
  SelectionParams selection;
  int workers = 1;
};

/// Wall-clock seconds per phase of grow_atlas; never written to files.
struct GrowthTiming {
  double spectral = 0.0;
  double coefficients = 0.0;
  std::vector<double> steps;
};

/// Diagonalize, transform, compute the generation-0 embryo, then for each
/// step re-expand that embryo at the selected centers. Stops early, and
/// records why, when selection finds no candidates.
Atlas grow_atlas(const PolyField& field, const GrowthConfig& config,
                 GrowthTiming* timing = nullptr);

/// Axis-aligned box around every chart, found by boundary sampling along
/// `directions` quasi-uniform rays per chart and padded by `pad` (relative).
std::pair<RealVector, RealVector> atlas_extent(const Atlas& atlas,
                                               std::size_t directions = 256,
                                               double pad = 0.05,
                                               const BoundaryParams& params = {});

}  // namespace doa
