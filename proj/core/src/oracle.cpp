#include "doa/oracle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "doa/errors.hpp"

namespace doa {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConverged:
      return "converged";
    case Verdict::kDiverged:
      return "diverged";
    case Verdict::kUndecided:
      return "undecided";
  }
  return "undecided";
}

SimOutcome simulate(const PolyField& field, const RealVector& x0,
                    const SimParams& params) {
  if (!(params.dt > 0.0) || !(params.horizon >= params.dt)) {
    throw std::invalid_argument("simulate requires dt > 0 and horizon >= dt");
  }
  const int n = field.dim();
  if (x0.size() != n) throw std::invalid_argument("initial state dimension");
  RealVector x = x0;
  RealVector k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double dt = params.dt;
  const auto steps = static_cast<long>(std::ceil(params.horizon / dt - 1e-9));

  auto classify = [&](double t) -> std::optional<SimOutcome> {
    const double norm = x.norm();
    if (!std::isfinite(norm) || norm >= params.r_max) {
      return SimOutcome{Verdict::kDiverged, t, norm};
    }
    if (norm <= params.eps_conv) return SimOutcome{Verdict::kConverged, t, norm};
    return std::nullopt;
  };

  if (auto v = classify(0.0)) return *v;
  for (long s = 1; s <= steps; ++s) {
    field.evaluate_into(x.data(), k1.data());
    tmp = x + 0.5 * dt * k1;
    field.evaluate_into(tmp.data(), k2.data());
    tmp = x + 0.5 * dt * k2;
    field.evaluate_into(tmp.data(), k3.data());
    tmp = x + dt * k3;
    field.evaluate_into(tmp.data(), k4.data());
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (auto v = classify(static_cast<double>(s) * dt)) return *v;
  }
  return {Verdict::kUndecided, static_cast<double>(steps) * dt, x.norm()};
}

std::optional<int> fixture_number(std::string_view id) {
  const auto slash = id.find_last_of("/\\");
  if (slash != std::string_view::npos) id.remove_prefix(slash + 1);
  if (id.ends_with(".sys")) id.remove_suffix(4);
  if (!id.starts_with("example")) return std::nullopt;
  id.remove_prefix(7);
  int value = 0;
  auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (ec != std::errc{} || ptr != id.data() + id.size()) return std::nullopt;
  return value;
}

double exact_da_level(int example, const RealVector& x) {
  if (example == 1 && x.size() == 2) {
    return (x(0) - 1.0) * (x(0) - 1.0) + x(1) * x(1) - 4.0;
  }
  if (example == 2 && x.size() == 3) {
    return x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - 1.0;
  }
  throw UnknownExactDA("no closed-form domain of attraction for example " +
                       std::to_string(example) + " in dimension " +
                       std::to_string(x.size()));
}

bool exact_da_member(int example, const RealVector& x) {
  return exact_da_level(example, x) < 0.0;
}

}  // namespace doa
