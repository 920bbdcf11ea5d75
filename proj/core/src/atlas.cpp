#include "doa/atlas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doa/errors.hpp"
#include "doa/parallel.hpp"
#include "doa/quasi_random.hpp"

namespace doa {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid),
                   values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(values.begin(),
                                     values.begin() + static_cast<long>(mid)));
  }
  return m;
}

double angle_between(const RealVector& a, const RealVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return std::numbers::pi;
  return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
}

}  // namespace

std::string to_string(MembershipRule rule) {
  switch (rule) {
    case MembershipRule::kTopBlock:
      return "top-block";
    case MembershipRule::kTailLimsup:
      return "tail-limsup";
  }
  return "top-block";
}

MembershipRule membership_rule_from_string(const std::string& name) {
  if (name == "top-block") return MembershipRule::kTopBlock;
  if (name == "tail-limsup") return MembershipRule::kTailLimsup;
  throw Error("unknown membership rule: " + name);
}

Chart::Chart(Embryo embryo, std::shared_ptr<const Spectrum> spectrum,
             MembershipRule rule)
    : embryo_(std::move(embryo)), spectrum_(std::move(spectrum)), rule_(rule) {
  if (!spectrum_ || spectrum_->dim() != embryo_.dim()) {
    throw std::invalid_argument("chart spectrum does not match embryo");
  }
  const int p = embryo_.degree();
  const int lowest =
      rule_ == MembershipRule::kTopBlock ? p : std::max(2, (p + 1) / 2);
  const ComplexSeries& s = embryo_.series();
  for (int m = lowest; m <= p; ++m) {
    TestedBlock block{m, {}};
    MultiIndex j = first_of_degree(s.dim(), m);
    for (const Complex& b : s.block(m)) {
      if (b != Complex{}) block.terms.push_back({j, std::log(std::abs(b))});
      next_in_degree(j);
    }
    blocks_.push_back(std::move(block));
  }
}

RealVector Chart::center_real() const {
  return (spectrum_->S * embryo_.center()).real();
}

double Chart::margin(const ComplexVector& z) const {
  const int n = embryo_.dim();
  std::array<double, kMaxDim> log_w{};
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(z(i) - embryo_.center()(i));
    log_w[static_cast<std::size_t>(i)] = a > 0.0 ? std::log(a) : kNegInf;
  }
  double worst = 0.0;
  std::vector<double> logs;
  for (const TestedBlock& block : blocks_) {
    logs.clear();
    double top = kNegInf;
    for (const LogTerm& t : block.terms) {
      double s = t.log_abs;
      for (int i = 0; i < n && s != kNegInf; ++i) {
        if (t.j[i]) s += t.j[i] * log_w[static_cast<std::size_t>(i)];
      }
      if (s == kNegInf) continue;
      logs.push_back(s);
      top = std::max(top, s);
    }
    if (logs.empty()) continue;
    double acc = 0.0;
    for (double s : logs) acc += std::exp(s - top);
    const double r = std::exp((top + std::log(acc)) / block.degree);
    worst = std::max(worst, r);
  }
  return worst;
}

Membership Chart::membership(const ComplexVector& z) const {
  const double r = margin(z);
  return {r < 1.0, r};
}

Membership chart_membership(const Chart& chart, const ComplexVector& z) {
  return chart.membership(z);
}

Atlas::Atlas(std::string system_id, std::shared_ptr<const Spectrum> spectrum,
             Chart origin_chart)
    : system_id_(std::move(system_id)), spectrum_(std::move(spectrum)) {
  if (origin_chart.generation() != 0) {
    throw std::invalid_argument("first chart must be generation 0");
  }
  charts_.push_back(std::move(origin_chart));
}

void Atlas::add_chart(Chart chart) {
  if (chart.generation() < 1 || chart.generation() < max_generation()) {
    throw std::invalid_argument("chart generations must be non-decreasing");
  }
  charts_.push_back(std::move(chart));
}

RealClassification classify_real(const Atlas& atlas, const RealVector& x,
                                 int max_generation) {
  const ComplexVector z = atlas.spectrum().S_inv * x.cast<Complex>();
  RealClassification out;
  out.margin = std::numeric_limits<double>::infinity();
  const auto& charts = atlas.charts();
  for (std::size_t c = 0; c < charts.size(); ++c) {
    if (max_generation >= 0 && charts[c].generation() > max_generation) break;
    const Membership m = charts[c].membership(z);
    if (m.member) return {true, static_cast<int>(c), m.margin};
    out.margin = std::min(out.margin, m.margin);
  }
  return out;
}

bool point_membership_real(const Atlas& atlas, const RealVector& x) {
  return classify_real(atlas, x).member;
}

BoundarySample boundary_sample(const Chart& chart, const RealVector& direction,
                               const BoundaryParams& params) {
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("zero direction");
  const RealVector d = direction / norm;
  const RealVector c = chart.center_real();
  const ComplexMatrix& S_inv = chart.spectrum().S_inv;
  auto margin_at = [&](double t) {
    const RealVector x = c + t * d;
    return chart.margin(S_inv * x.cast<Complex>());
  };

  BoundarySample out;
  const double h = params.search_radius / params.march_steps;
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; k <= params.march_steps; ++k) {
    const double t = k * h;
    if (margin_at(t) >= 1.0) {
      hi = t;
      break;
    }
    lo = t;
  }
  double lo_margin = margin_at(lo);
  if (hi < 0.0) {
    out.x = c + lo * d;
    out.t = lo;
    out.margin = lo_margin;
    return out;
  }
  while (lo_margin < 1.0 - params.tol && out.bisections < params.max_bisections) {
    const double mid = 0.5 * (lo + hi);
    const double r = margin_at(mid);
    if (r < 1.0) {
      lo = mid;
      lo_margin = r;
    } else {
      hi = mid;
    }
    ++out.bisections;
  }
  out.exited = true;
  out.t = lo;
  out.x = c + lo * d;
  out.margin = lo_margin;
  return out;
}

Selection select_expansion_points(const Atlas& atlas, int q,
                                  const SelectionParams& params, int workers) {
  if (q < 1) throw std::invalid_argument("points per step must be >= 1");
  const int n = atlas.spectrum().dim();
  const auto& charts = atlas.charts();
  const int frontier = atlas.max_generation();
  const std::size_t per_chart =
      static_cast<std::size_t>(params.directions_per_point) *
      static_cast<std::size_t>(q);
  const std::vector<RealVector> directions = sphere_directions(n, per_chart);

  std::vector<int> sources;
  for (std::size_t c = 0; c < charts.size(); ++c) {
    if (charts[c].generation() == frontier) sources.push_back(static_cast<int>(c));
  }

  struct Sample {
    bool exited = false;
    bool covered = false;
    GrowthCandidate candidate;
  };
  std::vector<Sample> samples(sources.size() * per_chart);
  parallel_for(samples.size(), workers, [&](std::size_t idx) {
    const int owner = sources[idx / per_chart];
    const std::size_t dir = idx % per_chart;
    const Chart& chart = charts[static_cast<std::size_t>(owner)];
    const BoundarySample b = boundary_sample(chart, directions[dir], params.boundary);
    Sample& s = samples[idx];
    s.exited = b.exited;
    if (!b.exited) return;
    s.candidate.chart = owner;
    s.candidate.direction = static_cast<int>(dir);
    s.candidate.x = b.x;
    s.candidate.z = atlas.spectrum().S_inv * b.x.cast<Complex>();
    s.candidate.margin = b.margin;
    s.candidate.abs_w = std::abs(evaluate(chart.embryo(), s.candidate.z));
    for (std::size_t c = 0; c < charts.size(); ++c) {
      if (static_cast<int>(c) == owner) continue;
      if (charts[c].margin(s.candidate.z) < params.covered_margin) {
        s.covered = true;
        break;
      }
    }
  });

  Selection out;
  GrowthStep& rec = out.record;
  rec.sampled = samples.size();
  std::vector<double> values;
  for (const Sample& s : samples) {
    if (!s.exited) {
      ++rec.rays_unbounded;
    } else if (std::isfinite(s.candidate.abs_w)) {
      values.push_back(s.candidate.abs_w);
    }
  }
  out.w_max = params.w_max ? *params.w_max : params.w_max_factor * median(values);
  rec.w_max = out.w_max;

  std::vector<const GrowthCandidate*> pool;
  for (const Sample& s : samples) {
    if (!s.exited) continue;
    if (!(s.candidate.abs_w <= out.w_max)) {
      ++rec.rejected_large;
    } else if (s.covered) {
      ++rec.rejected_covered;
    } else {
      pool.push_back(&s.candidate);
    }
  }
  if (pool.empty()) {
    throw NoCandidates("no boundary point with |W| <= " +
                       std::to_string(out.w_max) + " outside existing charts");
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const GrowthCandidate* a, const GrowthCandidate* b) {
                     return a->abs_w < b->abs_w;
                   });
  const double min_angle = std::numbers::pi / q;
  for (const GrowthCandidate* cand : pool) {
    if (static_cast<int>(out.centers.size()) == q) break;
    bool separated = true;
    for (const GrowthCandidate& kept : out.centers) {
      if (angle_between(kept.x, cand->x) < min_angle) {
        separated = false;
        break;
      }
    }
    if (separated) {
      out.centers.push_back(*cand);
    } else {
      ++rec.rejected_separation;
    }
  }
  rec.selected = out.centers;
  return out;
}

Atlas grow_atlas(const PolyField& field, const GrowthConfig& config,
                 GrowthTiming* timing) {
  if (config.steps < 0) throw std::invalid_argument("steps must be >= 0");
  GrowthTiming local;
  auto start = std::chrono::steady_clock::now();
  auto spectrum =
      std::make_shared<const Spectrum>(diagonalize(jacobian_at_origin(field)));
  const TransformedField tf = transform_field(field, *spectrum);
  local.spectral = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const Embryo origin =
      compute_coefficients(tf, *spectrum, config.degree, config.workers);
  local.coefficients = seconds_since(start);

  Atlas atlas(config.system_id, spectrum, Chart(origin, spectrum, config.rule));
  SelectionParams params = config.selection;
  for (int k = 1; k <= config.steps; ++k) {
    start = std::chrono::steady_clock::now();
    GrowthStep record;
    try {
      Selection sel =
          select_expansion_points(atlas, config.points, params, config.workers);
      // The threshold is fixed by the first step's boundary samples.
      if (!params.w_max) params.w_max = sel.w_max;
      record = std::move(sel.record);
      record.step = k;
      for (const GrowthCandidate& c : sel.centers) {
        atlas.add_chart(Chart(taylor_shift(origin, c.z).with_generation(k),
                              spectrum, config.rule));
        record.charts_added.push_back(static_cast<int>(atlas.charts().size()) - 1);
      }
    } catch (const NoCandidates& e) {
      record.step = k;
      record.w_max = params.w_max.value_or(0.0);
      record.stopped = true;
      record.stop_reason = e.what();
    }
    local.steps.push_back(seconds_since(start));
    const bool stop = record.stopped;
    atlas.growth_log().push_back(std::move(record));
    if (stop) break;
  }
  if (timing) *timing = std::move(local);
  return atlas;
}

std::pair<RealVector, RealVector> atlas_extent(const Atlas& atlas,
                                               std::size_t directions,
                                               double pad,
                                               const BoundaryParams& params) {
  const int n = atlas.spectrum().dim();
  RealVector lo = RealVector::Constant(n, std::numeric_limits<double>::infinity());
  RealVector hi = -lo;
  const auto dirs = sphere_directions(n, directions);
  for (const Chart& chart : atlas.charts()) {
    const RealVector c = chart.center_real();
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
    for (const RealVector& d : dirs) {
      const BoundarySample b = boundary_sample(chart, d, params);
      lo = lo.cwiseMin(b.x);
      hi = hi.cwiseMax(b.x);
    }
  }
  const RealVector span = (hi - lo).cwiseMax(1e-9);
  return {lo - pad * span, hi + pad * span};
}

}  // namespace doa
