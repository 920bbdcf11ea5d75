#include "doa/poly_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "doa/errors.hpp"

namespace doa {

PolyField::PolyField(std::vector<SparsePolynomial> components)
    : components_(std::move(components)) {
  const int n = dim();
  if (n < 1 || n > kMaxDim) {
    throw CapacityError("field dimension " + std::to_string(n) +
                        " outside supported range 1.." +
                        std::to_string(kMaxDim));
  }
  for (int i = 0; i < n; ++i) {
    auto& comp = components_[static_cast<std::size_t>(i)];
    std::erase_if(comp, [](const auto& kv) { return kv.second == 0.0; });
    for (const auto& [j, c] : comp) {
      if (j.dim() != n) {
        throw Error("component " + std::to_string(i + 1) +
                    " uses a monomial of dimension " + std::to_string(j.dim()));
      }
      if (j.degree() == 0) {
        throw Error("component " + std::to_string(i + 1) +
                    " has a constant term; the origin must be a steady state");
      }
      total_degree_ = std::max(total_degree_, j.degree());
      terms_.push_back({i, c, j});
    }
  }
}

RealVector PolyField::evaluate(const RealVector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("point dimension");
  RealVector out(dim());
  evaluate_into(x.data(), out.data());
  return out;
}

void PolyField::evaluate_into(const double* x, double* out) const {
  const int n = dim();
  for (int i = 0; i < n; ++i) out[i] = 0.0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (int k = 0; k < n; ++k) {
      for (int e = t.exps[k]; e > 0; --e) v *= x[k];
    }
    out[t.component] += v;
  }
}

RealMatrix jacobian_at_origin(const PolyField& field) {
  const int n = field.dim();
  RealMatrix jac = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      auto it = field.component(i).find(MultiIndex::unit(n, k));
      if (it != field.component(i).end()) jac(i, k) = it->second;
    }
  }
  return jac;
}

}  // namespace doa
