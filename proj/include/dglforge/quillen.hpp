#ifndef DGLFORGE_QUILLEN_HPP
#define DGLFORGE_QUILLEN_HPP

#include "dglforge/dgl.hpp"

namespace dglforge {

/// Finite-dimensional graded commutative algebra with unit at index 0.
struct TruncatedAlgebra {
  struct BasisElement {
    std::string name;
    int degree = 0;
  };
  using Combination = std::vector<std::pair<int, Rational>>;

  std::vector<BasisElement> basis;
  /// Products of non-unit basis elements; missing entries are zero.
  std::map<std::pair<int, int>, Combination> product;
  /// Generator names of the desuspended dual, one per non-unit element.
  std::vector<std::string> dual_names;
  /// Generator = scale * (desuspended dual basis element).
  std::vector<Rational> dual_scale;

  Combination multiply(int i, int j) const;
  /// Throws std::invalid_argument on a non-commutative or non-associative
  /// table, a product of the wrong degree, or a non-unit of degree < 2.
  void validate() const;
};

/// (wedge u)/u^power with |u| = gen_degree. The dual generators are named
/// prefix, prefix2, prefix3, ... and scaled so that the coefficient of
/// [x_{floor(n/2)}, x_{ceil(n/2)}] in d x_n is 1.
TruncatedAlgebra truncated_monogenic(int gen_degree, int power, const std::string& prefix = "a");

/// Free dgl on the desuspended dual with the quadratic differential
/// <s e_p, s e_q; d s^-1 e_b> = (-1)^{|e_p|} <e_p e_q; e_b>.
DglPresentation lstar(const TruncatedAlgebra& A);

}  // namespace dglforge

#endif  // DGLFORGE_QUILLEN_HPP
