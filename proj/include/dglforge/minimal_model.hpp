#ifndef DGLFORGE_MINIMAL_MODEL_HPP
#define DGLFORGE_MINIMAL_MODEL_HPP

#include "dglforge/dgl.hpp"

namespace dglforge {

struct MinimalModel {
  DglPresentation minimal;
  /// Levels of the new generators, present when the input carries a
  /// filtration on every generator.
  std::optional<FiltrationAssignment> filtration;
  /// Image of every input generator under the retraction onto the output.
  std::vector<LieElement> retraction;
  /// Each output generator as a combination of input generators.
  std::vector<std::vector<std::pair<Letter, Rational>>> generator_vectors;
};

/// Splits the generators as K + R + d1(R) degreewise (d1 the linear part)
/// and divides by the contractible ideal generated by R and dR. K is chosen
/// compatible with the input filtration. Throws std::domain_error when a
/// generator lies above the cap.
MinimalModel minimalize(const DglPresentation& p, int degree_cap);

struct MinimalModelCheck {
  bool decomposable = false;
  bool d_squared = false;
  bool homology_preserved = false;
  /// Input length (0 without a filtration).
  int input_length = 0;
  int output_length = 0;
  /// Levels decompose the quadratic part of the output differential.
  bool quadratic_decomposition = false;
  /// d K lies in L(K of level < input length).
  bool top_stage = false;
  std::vector<std::size_t> homology;  // index = degree

  bool ok() const {
    return decomposable && d_squared && homology_preserved && (input_length == 0 || (quadratic_decomposition && top_stage));
  }
};

MinimalModelCheck check_minimal_model(const DglPresentation& input, const MinimalModel& model, int degree_cap);

}  // namespace dglforge

#endif  // DGLFORGE_MINIMAL_MODEL_HPP
