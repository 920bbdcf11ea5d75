#include "doa/quasi_random.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace doa {
namespace {
constexpr std::array<int, 12> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double factor = inv;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % static_cast<std::uint64_t>(base)) * factor;
    index /= static_cast<std::uint64_t>(base);
    factor *= inv;
  }
  return result;
}

RealVector halton_point(int dim, std::uint64_t index) {
  if (dim < 1 || dim > static_cast<int>(kPrimes.size())) {
    throw std::invalid_argument("halton dimension");
  }
  RealVector p(dim);
  for (int i = 0; i < dim; ++i) p(i) = radical_inverse(index, kPrimes[i]);
  return p;
}

std::vector<RealVector> sphere_directions(int dim, std::size_t count) {
  using std::numbers::pi;
  std::vector<RealVector> out;
  out.reserve(count);
  if (dim == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(RealVector::Constant(1, k % 2 == 0 ? 1.0 : -1.0));
    }
    return out;
  }
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * pi * (static_cast<double>(k) + 0.5) /
                       static_cast<double>(count);
      out.push_back(RealVector{{std::cos(a), std::sin(a)}});
    }
    return out;
  }
  if (dim == 3) {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) /
                                 static_cast<double>(count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * static_cast<double>(k);
      out.push_back(RealVector{{rho * std::cos(a), rho * std::sin(a), z}});
    }
    return out;
  }
  const int pairs = (dim + 1) / 2;
  for (std::size_t k = 0; k < count; ++k) {
    const RealVector u = halton_point(2 * pairs, k + 1);
    RealVector g(dim);
    for (int i = 0; i < pairs; ++i) {
      const double radius = std::sqrt(-2.0 * std::log(1.0 - u(2 * i)));
      const double angle = 2.0 * pi * u(2 * i + 1);
      g(2 * i) = radius * std::cos(angle);
      if (2 * i + 1 < dim) g(2 * i + 1) = radius * std::sin(angle);
    }
    const double norm = g.norm();
    out.push_back(norm > 0 ? RealVector(g / norm) : RealVector::Unit(dim, 0));
  }
  return out;
}

}  // namespace doa
