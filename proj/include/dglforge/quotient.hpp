#ifndef DGLFORGE_QUOTIENT_HPP
#define DGLFORGE_QUOTIENT_HPP

#include "dglforge/dgl.hpp"

#include <memory>

namespace dglforge {

/// Quotient of a free dgl by the Lie ideal generated by a differential-stable
/// list. Components are computed on demand; membership goes through the
/// multigrading when every generator of the ideal is multihomogeneous.
class QuotientComplex {
 public:
  /// Throws std::invalid_argument if d maps an ideal generator of degree
  /// <= degree_cap outside the ideal.
  QuotientComplex(DglPresentation p, std::vector<LieElement> ideal_gens, int degree_cap);
  QuotientComplex(const QuotientComplex&) = delete;
  QuotientComplex& operator=(const QuotientComplex&) = delete;

  const DglPresentation& presentation() const { return p_; }
  /// e lies in the ideal (its class is zero).
  bool is_zero_class(const LieElement& e);
  std::size_t ideal_dimension(int degree);
  std::size_t dimension(int degree);
  std::size_t homology_dimension(int degree);

 private:
  const std::vector<LieElement>& ideal_component(int degree);
  std::size_t boundary_rank(int degree);

  DglPresentation p_;
  std::vector<LieElement> gens_;
  std::unique_ptr<MultigradedIdeal> multigraded_;
  std::map<int, std::vector<LieElement>> components_;
};

}  // namespace dglforge

#endif  // DGLFORGE_QUOTIENT_HPP
