#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "doa/poly_field.hpp"
#include "doa/types.hpp"

namespace doa {

enum class Verdict { kConverged, kDiverged, kUndecided };

std::string to_string(Verdict verdict);

struct SimParams {
  double horizon = 50.0;
  double dt = 1e-3;
  double eps_conv = 1e-3;
  double r_max = 1e3;
};

struct SimOutcome {
  Verdict verdict = Verdict::kUndecided;
  double time = 0.0;
  double final_norm = 0.0;
};

/// Fixed-step classical RK4 from x0. Converged once |x| <= eps_conv,
/// Diverged once |x| >= r_max or the state is not finite, Undecided when
/// the horizon is reached first.
SimOutcome simulate(const PolyField& field, const RealVector& x0,
                    const SimParams& params = {});

/// Fixture number parsed from ids such as "example2" or "example2.sys".
std::optional<int> fixture_number(std::string_view system_id);

/// Signed level function of the known domains of attraction: negative
/// exactly inside. Example 1: (x1-1)^2 + x2^2 - 4. Example 2:
/// x1^2 + x2^2 - x3^2 - 1. Throws UnknownExactDA for other fixtures.
double exact_da_level(int example, const RealVector& x);

bool exact_da_member(int example, const RealVector& x);

}  // namespace doa
