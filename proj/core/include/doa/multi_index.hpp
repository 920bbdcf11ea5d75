#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace doa {

inline constexpr int kMaxDim = 6;
inline constexpr int kMaxDegree = 60;

/// Exponent vector j = (j_1, ..., j_n) of a monomial z_1^j_1 ... z_n^j_n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex unit(int dim, int i);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  void set(int i, int value);

  MultiIndex& operator+=(const MultiIndex& other);
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
    return a += b;
  }

  /// Componentwise a - b, or false when some component would go negative.
  friend bool try_subtract(const MultiIndex& a, const MultiIndex& b,
                           MultiIndex& out);

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.dim_ == b.dim_ && a.exps_ == b.exps_;
  }

  std::string to_string() const;

 private:
  std::array<std::uint8_t, kMaxDim> exps_{};
  std::uint8_t dim_ = 0;
  std::uint16_t degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger leading exponents first, so (2,0) < (1,1) < (0,2).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

/// Advances `j` to its successor among indices of the same degree in graded
/// lexicographic order. Returns false (leaving `j` unspecified) past the end.
bool next_in_degree(MultiIndex& j);

/// First index of degree m in graded-lex order, i.e. (m, 0, ..., 0).
MultiIndex first_of_degree(int dim, int m);

/// All indices with |j| = m, in graded lexicographic order.
std::vector<MultiIndex> enumerate_multiindices(int dim, int m);

/// Binomial coefficient C(a, b) for a up to kMaxDim + kMaxDegree + 1;
/// 0 when b < 0 or b > a.
std::uint64_t binomial(int a, int b);

}  // namespace doa
