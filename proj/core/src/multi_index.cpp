#include "doa/multi_index.hpp"

#include <stdexcept>

#include "doa/errors.hpp"

namespace doa {
namespace {

constexpr int kBinomialRows = kMaxDim + kMaxDegree + 2;

struct BinomialTable {
  std::array<std::array<std::uint64_t, kBinomialRows>, kBinomialRows> c{};
  BinomialTable() {
    for (int a = 0; a < kBinomialRows; ++a) {
      c[a][0] = 1;
      for (int b = 1; b <= a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw CapacityError("dimension " + std::to_string(dim) +
                        " outside supported range 1.." +
                        std::to_string(kMaxDim));
  }
}

void check_exponent(int value) {
  if (value < 0 || value > 255) {
    throw std::out_of_range("exponent out of range: " + std::to_string(value));
  }
}

}  // namespace

std::uint64_t binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (a >= kBinomialRows) throw std::out_of_range("binomial row too large");
  return binomials().c[a][b];
}

MultiIndex::MultiIndex(int dim) : dim_(static_cast<std::uint8_t>(dim)) {
  check_dim(dim);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents) {
  check_dim(static_cast<int>(exponents.size()));
  dim_ = static_cast<std::uint8_t>(exponents.size());
  int i = 0;
  for (int e : exponents) set(i++, e);
}

MultiIndex MultiIndex::unit(int dim, int i) {
  MultiIndex e(dim);
  e.set(i, 1);
  return e;
}

void MultiIndex::set(int i, int value) {
  if (i < 0 || i >= dim_) throw std::out_of_range("multi-index position");
  check_exponent(value);
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + value);
  exps_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& other) {
  for (int i = 0; i < dim_; ++i) set(i, exps_[i] + other.exps_[i]);
  return *this;
}

bool try_subtract(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
  out = a;
  for (int i = 0; i < a.dim_; ++i) {
    if (b.exps_[i] > a.exps_[i]) return false;
    out.exps_[i] = static_cast<std::uint8_t>(a.exps_[i] - b.exps_[i]);
  }
  out.degree_ = static_cast<std::uint16_t>(a.degree_ - b.degree_);
  return true;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(exps_[i]);
  }
  return s + ")";
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

bool next_in_degree(MultiIndex& j) {
  const int n = j.dim();
  // Rightmost position (excluding the last) that can give up one unit.
  int i = n - 2;
  while (i >= 0 && j[i] == 0) --i;
  if (i < 0) return false;
  int tail = 0;
  for (int t = i + 1; t < n; ++t) {
    tail += j[t];
    j.set(t, 0);
  }
  j.set(i, j[i] - 1);
  j.set(i + 1, tail + 1);
  return true;
}

MultiIndex first_of_degree(int dim, int m) {
  MultiIndex j(dim);
  j.set(0, m);
  return j;
}

std::vector<MultiIndex> enumerate_multiindices(int dim, int m) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(dim + m - 1, dim - 1)));
  MultiIndex j = first_of_degree(dim, m);
  do {
    out.push_back(j);
  } while (next_in_degree(j));
  return out;
}

}  // namespace doa
