#include "dglforge/quotient.hpp"

#include <stdexcept>

namespace dglforge {

QuotientComplex::QuotientComplex(DglPresentation p, std::vector<LieElement> ideal_gens, int degree_cap)
    : p_(std::move(p)), gens_(std::move(ideal_gens)) {
  const std::size_t n = p_.size();
  bool homogeneous = true;
  for (const auto& g : gens_)
    if (!g.is_zero() && split_by_multidegree(g, n).size() != 1) homogeneous = false;
  const auto letters = p_.alphabet().letters();
  if (homogeneous) multigraded_ = std::make_unique<MultigradedIdeal>(gens_, p_.alphabet(), letters);
  for (const auto& g : gens_) {
    if (g.is_zero() || *g.degree() > degree_cap) continue;
    if (!is_zero_class(extend_derivation(p_, g)))
      throw std::invalid_argument("ideal is not differential-stable: d(" + to_string(g, p_.alphabet()) +
                                  ") leaves the ideal");
  }
}

const std::vector<LieElement>& QuotientComplex::ideal_component(int degree) {
  if (auto it = components_.find(degree); it != components_.end()) return it->second;
  const auto letters = p_.alphabet().letters();
  return components_.emplace(degree, ideal_span_in_degree(gens_, p_.alphabet(), letters, degree)).first->second;
}

bool QuotientComplex::is_zero_class(const LieElement& e) {
  if (e.is_zero()) return true;
  if (multigraded_) return multigraded_->contains(e);
  SpanBuilder span;
  for (const auto& x : ideal_component(*e.degree())) span.add(x.coords());
  return span.contains(e.coords());
}

std::size_t QuotientComplex::ideal_dimension(int degree) { return ideal_component(degree).size(); }

std::size_t QuotientComplex::dimension(int degree) {
  const auto letters = p_.alphabet().letters();
  return lie_basis(p_.alphabet(), letters, degree).size() - ideal_dimension(degree);
}

std::size_t QuotientComplex::boundary_rank(int degree) {
  if (degree <= 1) return 0;
  const auto& lower = ideal_component(degree - 1);
  std::vector<LieElement> cols(lower.begin(), lower.end());
  const std::size_t base = cols.size();
  const auto letters = p_.alphabet().letters();
  for (const auto& b : lie_basis(p_.alphabet(), letters, degree))
    cols.push_back(extend_derivation(p_, LieElement::from_tree(b.tree)));
  return rank(subspace_matrix(cols).matrix) - base;
}

std::size_t QuotientComplex::homology_dimension(int degree) {
  require_d_squared(p_, degree + 1);
  return dimension(degree) - boundary_rank(degree) - boundary_rank(degree + 1);
}

}  // namespace dglforge
